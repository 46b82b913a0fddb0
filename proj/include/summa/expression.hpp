#pragma once

#include <memory>
#include <string>

#include "summa/kernel.hpp"

namespace summa {

// Small arithmetic language over the variables k and n:
//   numbers (2, 0.5, 1e-3, 3i), pi, e, egamma, i, + - * / ^, parentheses, and the
//   functions exp log sqrt sin cos lgamma logfact H logG.
// logfact(x) = log x!, H(x) = psi(x+1) + euler gamma, logG(x) = log of Barnes G(x).
class Expr {
public:
    struct Node;

    static Expr parse(const std::string& text);
    static Expr variable(char v);
    static Expr number(Scalar c);

    // Taylor jet in `var` ('k' or 'n') of order R; the other variable is held fixed.
    Jet eval(Scalar k, Scalar n, int R, char var = 'k') const;
    Scalar value(Scalar k, Scalar n) const;
    bool depends_on(char var) const;
    std::string print() const;

private:
    explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    std::shared_ptr<const Node> root_;
};

// g(k, n) from an expression in k and n.
BivariateOracle bivariate_oracle(const std::string& text, std::optional<int> asymptotic_order = {});

// "1.5+0.5i", "-2", "i", "pi/3"; constant expressions are accepted.
Scalar parse_complex(const std::string& text);

}  // namespace summa
