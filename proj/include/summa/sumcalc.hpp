/// \file sumcalc.hpp
/// \brief Calculus on finite sums: Euler-Maclaurin in its classical, alternating
/// and oscillating forms, boundary constants, derivatives, periodic sign
/// sequences and factorial-type asymptotics.

#pragma once

#include <string>
#include <vector>

#include "summa/kernel.hpp"
#include "summa/summability.hpp"

namespace summa {

enum class Truncation { fixed, min_term };
enum class BoundaryMode { semilinear_limit, em_asymptotic, xi_weighted };

BoundaryMode parse_boundary_mode(const std::string& s);

struct SeriesValue {
    Scalar value = 0;
    double error_estimate = 0;
    int terms_used = 0;
};

/// Arguments below this real part are moved up by integer steps before an
/// asymptotic series is applied; the skipped terms are summed directly.
constexpr double kDefaultShiftTo = 30.0;

/// int_A^B g, from the antiderivative when the oracle has one, else adaptive Gauss-Kronrod.
Scalar integrate(const FunctionOracle& g, Scalar A, Scalar B);

/// Unique natural generalization of sum_{k=a}^n g(k): integer offsets are summed
/// directly, anything else goes through em_sum.
Scalar finite_sum(const FunctionOracle& g, Scalar a, Scalar n);

SeriesValue em_sum(const FunctionOracle& g, Scalar a, Scalar n, int max_order,
                   Truncation truncation = Truncation::min_term, double shift_to = kDefaultShiftTo);

/// c_r = f_G^{(r)}(a-1) for f(n) = sum_{k=a}^n g(k). z is the truncation of the
/// double series used by xi_weighted.
SeriesValue em_boundary_constant(const FunctionOracle& g, int r, BoundaryMode mode, Scalar a = 1.0, int z = 20);

/// f_G^{(r)}(n) = sum_{k=a}^n g^{(r)}(k) + c_r
SeriesValue sum_derivative(const FunctionOracle& g, Scalar a, Scalar n, int r,
                           BoundaryMode mode = BoundaryMode::em_asymptotic, int z = 20);

/// d/dn sum_{k=a}^n g(k, n)
SeriesValue sum_derivative_convoluted(const BivariateOracle& g, Scalar a, Scalar n);

/// sum_{k=a}^n (-1)^k g(k), with (-1)^x = e^{i pi x}.
SeriesValue alt_em_sum(const FunctionOracle& g, Scalar a, Scalar n, int max_order,
                       Truncation truncation = Truncation::fixed, double shift_to = kDefaultShiftTo);

/// sum_{k=a}^n e^{i theta k} g(k)
SeriesValue osc_em_sum(const FunctionOracle& g, double theta, Scalar a, Scalar n, int max_order,
                       Truncation truncation = Truncation::fixed, double shift_to = kDefaultShiftTo);

/// T-value of sum_{k>=a} e^{i theta k} g(k) from the partial sum to n_max plus the Theta_r tail.
SummationResult osc_t_value(const FunctionOracle& g, double theta, Scalar a, int m, Scalar n_max);

/// T-value of sum_{k>=a} (-1)^k g(k) from the partial sum to n_max and the N_r tail.
SummationResult alt_divergent_value(const FunctionOracle& g, Scalar a, int m, Scalar n_max);

/// Periodic sequence, s_k = values[k mod p].
struct SignSequence {
    std::vector<Scalar> values;

    SignSequence() = default;
    explicit SignSequence(std::vector<Scalar> v);

    int period() const { return int(values.size()); }
    Scalar at(long k) const;
    Scalar mean() const;
    /// nu_m with s_k = sum_m nu_m e^{i 2 pi m k / p}
    std::vector<Scalar> dft() const;
    SignSequence zero_mean() const;
    /// s'_k = s_{k+x}
    SignSequence rotated(long x) const;
};

struct PhaseComponent {
    int index = 0;
    double theta = 0;
    Scalar nu = 0;
};

struct DftSplit {
    Scalar mean = 0;
    SignSequence zero_mean;
    std::vector<PhaseComponent> components;
};

DftSplit dft_split(const std::vector<Scalar>& values);

/// S_0..S_rmax at offset x, S_r(x) = T-value of sum_{j>=1} s_{j+x-1} j^r.
std::vector<Scalar> sign_seq_table_S(const SignSequence& s, int r_max, long x = 1);

SummationResult periodic_accelerate(const SignSequence& s, const FunctionOracle& g, long a, int m, long n_max);

enum class FactorialFamily { factorial, hyperfactorial, superfactorial, second_factorial };
FactorialFamily parse_factorial_family(const std::string& s);

struct AsymptoticEvaluation {
    double log_value = 0;
    double value = 0;
    std::string order_note;
};

AsymptoticEvaluation stirling_glaisher_expansion(FactorialFamily kind, double n);
/// log of the exact product for integer n.
double factorial_family_exact_log(FactorialFamily kind, int n);
/// Exponent constant of the hyperfactorial expansion.
double hyperfactorial_constant();

}  // namespace summa
