/// \file descriptor.hpp
/// \brief Textual sum descriptors for the command line:
///
///     sum k=<a>..<upper> of [<sign>*]<expr in k, n> [@ n=<complex>]
///
/// upper is n, inf or a complex literal; sign is alt, theta=<angle> or
/// period:[s_0,s_1,...]. A body that mentions n is a convoluted sum.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "summa/kernel.hpp"

namespace summa {

struct FiniteSumSpec {
    enum class Sign { none, alternating, theta, periodic };

    Sign sign = Sign::none;
    double theta = 0;             // Sign::theta
    std::vector<Scalar> period;   // Sign::periodic, s_0..s_{p-1}
    Scalar a = 1.0;
    bool infinite = false;        // upper bound inf
    bool symbolic_upper = true;   // upper bound is the variable n
    std::optional<Scalar> n;      // the value of n (or the literal upper bound)
    std::string body;             // canonical expression text
    bool convoluted = false;

    /// Effective angle: pi for alt, theta for theta, 0 otherwise.
    double angle() const;
    std::string canonical() const;
    bool operator==(const FiniteSumSpec&) const = default;
};

FiniteSumSpec parse_descriptor(const std::string& text);

/// "1.5+0.5i", shortest form that parses back to the same value.
std::string format_complex(Scalar z);

FunctionOracle spec_oracle(const FiniteSumSpec& s, std::optional<int> asymptotic_order = {});
BivariateOracle spec_bivariate(const FiniteSumSpec& s, std::optional<int> asymptotic_order = {});

}  // namespace summa
