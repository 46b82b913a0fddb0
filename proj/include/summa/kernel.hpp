// SPDX-License-Identifier: MIT
/// \file kernel.hpp
/// \brief Scalars, function oracles with derivative access, and accumulation.

#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace summa {

using Scalar = std::complex<double>;

enum class ErrorKind { configuration, domain, singularity, numeric, precondition, parse };

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Truncated Taylor coefficients c_j = f^{(j)}(x)/j!, j = 0..R.
using Jet = std::vector<Scalar>;

namespace jet {

Jet constant(Scalar c, int R);
Jet variable(Scalar x, int R);
Jet add(const Jet& a, const Jet& b);
Jet sub(const Jet& a, const Jet& b);
Jet neg(const Jet& a);
Jet scale(const Jet& a, Scalar c);
Jet mul(const Jet& a, const Jet& b);
Jet div(const Jet& a, const Jet& b);
Jet exp(const Jet& u);
Jet log(const Jet& u);
Jet pow(const Jet& u, Scalar s);
Jet pow(const Jet& u, const Jet& v);
Jet sqrt(const Jet& u);
Jet sin(const Jet& u);
Jet cos(const Jet& u);

/// Composes an outer series, given as Taylor coefficients about u[0], with u.
Jet compose(const std::vector<Scalar>& outer, const Jet& u);

/// r-th derivative encoded in a jet.
Scalar derivative(const Jet& j, int r);

}  // namespace jet

/// Exact-phase helper: e^{i theta x}. Integer multiples of pi/2 come out exact.
Scalar phase(double theta, Scalar x);

/// Complex log-gamma (continuous along the positive real axis).
Scalar lgamma(Scalar z);
/// Polygamma psi^{(m)}(z), m >= 0.
Scalar polygamma(int m, Scalar z);
/// log G(z) for the Barnes G-function.
Scalar log_barnes_g(Scalar z);
/// r-th derivative of log G(z), r >= 0.
Scalar log_barnes_g_derivative(int r, Scalar z);

/// A function of one variable with derivatives of every order on demand.
class FunctionOracle {
public:
    using TaylorFn = std::function<Jet(Scalar, int)>;
    using ValueFn = std::function<Scalar(Scalar)>;

    FunctionOracle() = default;
    FunctionOracle(std::string name, TaylorFn taylor, ValueFn value = {},
                   ValueFn antiderivative = {}, std::optional<int> asymptotic_order = {},
                   double domain_start = 1.0);

    Scalar value(Scalar k) const;
    Scalar derivative(int r, Scalar k) const;
    Jet taylor(Scalar k, int R) const;
    bool has_antiderivative() const { return static_cast<bool>(anti_); }
    Scalar antiderivative(Scalar k) const;

    const std::string& name() const { return name_; }
    std::optional<int> asymptotic_order() const { return order_; }
    double domain_start() const { return domain_start_; }
    explicit operator bool() const { return static_cast<bool>(taylor_); }

    FunctionOracle with_order(std::optional<int> m) const;
    FunctionOracle with_name(std::string name) const;
    /// k -> g(k + c)
    FunctionOracle shifted(Scalar c) const;
    /// k -> g^{(r)}(k)
    FunctionOracle derived(int r) const;

private:
    std::string name_;
    TaylorFn taylor_;
    ValueFn value_;
    ValueFn anti_;
    std::optional<int> order_;
    double domain_start_ = 1.0;
};

/// g(k, n); Taylor jets in either variable.
class BivariateOracle {
public:
    using TaylorFn = std::function<Jet(Scalar, Scalar, int)>;

    BivariateOracle() = default;
    BivariateOracle(std::string name, TaylorFn in_k, TaylorFn in_n,
                    std::optional<int> asymptotic_order = {});

    Scalar value(Scalar k, Scalar n) const;
    Scalar partial_k(int r, Scalar k, Scalar n) const;
    Scalar partial_n(Scalar k, Scalar n) const;
    Jet taylor_k(Scalar k, Scalar n, int R) const { return in_k_(k, n, R); }
    Jet taylor_n(Scalar k, Scalar n, int R) const { return in_n_(k, n, R); }
    /// k -> g(k, n) with n frozen.
    FunctionOracle freeze_n(Scalar n) const;

    const std::string& name() const { return name_; }
    std::optional<int> asymptotic_order() const { return order_; }

private:
    std::string name_;
    TaylorFn in_k_;
    TaylorFn in_n_;
    std::optional<int> order_;
};

enum class BuiltinKind {
    power_s, log, log_factorial_term, exp_i_theta_times, rational, polynomial, custom_composite
};

struct BuiltinParams {
    double s = 1.0;                  // power_s exponent
    int level = 1;                   // log_factorial_term: 1 -> log k!, 2 -> log prod_{j<=k} j!
    double theta = 0.0;              // exp_i_theta_times
    std::optional<FunctionOracle> inner;  // exp_i_theta_times
    std::vector<Scalar> numerator;   // rational / polynomial, lowest degree first
    std::vector<Scalar> denominator;
    std::string expression;          // custom_composite, in the variable k
    std::optional<int> asymptotic_order;
};

FunctionOracle builtin_oracle(BuiltinKind kind, const BuiltinParams& params = {});
BuiltinKind parse_builtin_kind(const std::string& name);

/// Value-only oracle, derivatives by the finite-difference fallback.
FunctionOracle oracle_from_values(std::string name, std::function<Scalar(Scalar)> f,
                                  double h = 1e-2, double domain_start = -1e300);

/// Central r-th difference with two-level Richardson extrapolation, r <= 6.
Scalar fd_fallback_derivative(const std::function<Scalar(Scalar)>& f, int r, Scalar k, double h,
                              double domain_start = -1e300);

/// Neumaier-compensated accumulator.
class Accumulator {
public:
    void add(Scalar x);
    Accumulator& operator+=(Scalar x) {
        add(x);
        return *this;
    }
    Scalar value() const { return {sum_re_ + c_re_, sum_im_ + c_im_}; }

private:
    double sum_re_ = 0, c_re_ = 0, sum_im_ = 0, c_im_ = 0;
};

Scalar compensated_sum(const std::vector<Scalar>& terms);

bool is_integer(Scalar x, double tol = 1e-12);
double factorial(int n);

}  // namespace summa
