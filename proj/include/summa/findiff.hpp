/// \file findiff.hpp
/// \brief Forward differences: derivatives from equally spaced samples, Newton
/// interpolation, Gregory summation and the discrete oscillating formulas.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "summa/fraceval.hpp"
#include "summa/kernel.hpp"
#include "summa/sumcalc.hpp"

namespace summa {

/// Difference tables deeper than this are dominated by rounding in binary64.
constexpr int kMaxDifferenceOrder = 40;

struct SampleGrid {
    Scalar x0 = 0;
    double h = 1;
    std::vector<Scalar> values;  // f(x0 + j h), j = 0..J

    static SampleGrid sample(const std::function<Scalar(Scalar)>& f, Scalar x0, double h, int J);
    int order() const { return int(values.size()) - 1; }
    void validate() const;
};

struct DifferenceTable {
    /// rows[j][i] = Delta^j f(x0 + i h)
    std::vector<std::vector<Scalar>> rows;
    Scalar at_x0(int j) const { return rows.at(j).front(); }
    int order() const { return int(rows.size()) - 1; }
};

DifferenceTable forward_differences(const SampleGrid& grid);

/// Coefficients of log(1+x)^r up to x^J, by repeated Cauchy products. Cached.
const std::vector<double>& log_power_coefficients(int r, int J);

enum class Regularize { truncate, xi, xi_extrapolated };
Regularize parse_regularize(const std::string& s);
const char* to_string(Regularize r);

struct FdResult {
    Scalar value = 0;
    int order_used = 0;
    bool capped = false;
    std::vector<std::string> warnings;
};

/// r-th derivative at x0 from log(1+Delta)^r / h^r. xi applies chi_J(j) weights,
/// xi_extrapolated combines 2 Xi_J - Xi_{J/2}. A declared bandwidth B triggers an
/// undersampling warning when h >= 1/(2B).
FdResult fd_derivative(const SampleGrid& grid, int r, int J, Regularize regularize = Regularize::truncate,
                       std::optional<double> bandwidth = {});

/// Compares f with the local cubic interpolant at a few sample midpoints; a
/// mismatch above 20% of the sampled scale means the samples alias f.
std::optional<std::string> midpoint_alias_check(const std::function<Scalar(Scalar)>& f, const SampleGrid& grid, int J);

/// sum_{j<=J} C(t, j) Delta^j f(x0), t = (x - x0)/h.
FdResult newton_interpolate(const SampleGrid& grid, Scalar x, int J);

/// sum_{k=a}^n g(k) = int_a^n g + (g(n)+g(a))/2 - sum_{r>=2} G_r [Delta^{r-1} g(n) - Delta^{r-1} g(a)],
/// truncated at the smallest term. Both ends move up to real part shift_to first.
SeriesValue gregory_sum(const FunctionOracle& g, Scalar a, Scalar n, int max_order = kMaxDifferenceOrder,
                        double shift_to = kDefaultShiftTo);

/// (g(a)+g(a-1))/2 + sum_{r=2}^R G_r Delta^r g(a-1), which approximates int_{a-1}^a g.
Scalar gregory_unit_interval(const FunctionOracle& g, Scalar a, int R);

/// sum_{k=a}^n e^{i theta k} g(k) using only samples of g: weights from d_r when
/// theta = 0 mod 2 pi, from Upsilon_r otherwise, and Delta^r g at the horizon.
SummationResult discrete_osc_eval(const FunctionOracle& g, double theta, Scalar a, Scalar n, int m,
                                  const EvalConfig& cfg = {});

/// T-value of sum_{k>=a} e^{i theta k} g(k): direct sum to n plus the Phi_r tail.
SummationResult discrete_osc_tvalue(const FunctionOracle& g, double theta, long a, int m, long n);

struct IdentityCheck {
    std::string name;
    double partial = 0;
    double target = 0;
    int terms = 0;
    double error = 0;       // partial - target
    bool monotone = false;  // partial sums move one way
    bool bracketed = false; // every partial sum stays on one side of the target
};

/// Partial sums and products of the Gregory-coefficient identities and the
/// difference-product formulas for e, e^lambda and e^pi.
std::vector<IdentityCheck> identity_constants();
IdentityCheck identity_constant(const std::string& name, int terms);

}  // namespace summa
