/// \file summability.hpp
/// \brief Generalized values of divergent series: the Xi weights, Lindelof,
/// Euler's transform, averaging limits and the Hasse series for zeta.
///
/// xi_sum and lindelof_sum return T-values when the underlying function is
/// analytic on the segment [x0, x]; no analyticity check is attempted.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "summa/kernel.hpp"

namespace summa {

enum class Method { xi, lindelof, euler, cesaro, direct };
enum class Diagnostics { converged, plateau, blowup_detected, limit_of_schedule };

const char* to_string(Method m);
const char* to_string(Diagnostics d);

struct SummationResult {
    Scalar value = 0;
    Method method = Method::direct;
    int terms_used = 0;
    std::optional<double> error_estimate;
    Diagnostics diagnostics = Diagnostics::limit_of_schedule;
};

/// Terms a_j = f^{(j)}(x0)/j! (x - x0)^j with optional access to f, f', f'' at x.
struct TaylorStream {
    std::function<Scalar(int)> coefficient;
    Scalar x0 = 0;
    Scalar x = 0;
    std::optional<Scalar> f_at_x;
    std::optional<Scalar> f_prime_at_x;
    std::optional<Scalar> f_second_at_x;

    /// Stream of an oracle's Taylor series about x0 evaluated at x, up to order R.
    static TaylorStream from_oracle(const FunctionOracle& f, Scalar x0, Scalar x, int R);
    static TaylorStream from_coefficients(std::vector<Scalar> a);
};

/// chi_n(j) = prod_{k=1}^j (1 - (k-1)/n)
double chi(int n, int j);

SummationResult xi_sum(const TaylorStream& stream, int n, int shift = 0);
SummationResult xi_sum(const std::vector<Scalar>& coefficients, int n, int shift = 0);

/// [m(m-1) f + 2m (x-x0) f' + (x-x0)^2 f''] / (2n), complex form.
Scalar xi_error_term(Scalar f_second_at_x, Scalar x, Scalar x0, int n, int m, Scalar f_at_x, Scalar f_prime_at_x);
/// Signed real part of xi_error_term.
double xi_error_estimate(Scalar f_second_at_x, Scalar x, Scalar x0, int n, int m, Scalar f_at_x,
                         Scalar f_prime_at_x);

/// m* = 1/2 - (f'/f)(x - x0)
double optimal_shift(Scalar f, Scalar f_prime, Scalar x, Scalar x0);

std::vector<double> default_lindelof_schedule();
SummationResult lindelof_sum(const std::function<Scalar(int)>& coefficient, const std::vector<double>& delta_schedule,
                             int n_terms);

/// Euler sum of sum_{k>=a} (-1)^k g(k) from forward differences of g at a.
SummationResult euler_transform_sum(const std::function<Scalar(Scalar)>& g, Scalar a, int depth);
SummationResult euler_transform_sum(const FunctionOracle& g, Scalar a, int depth);
/// Same transform for sum_{k>=a} e^{i theta k} g(k); needs |w/(1-w)| < 1, w = e^{i theta}.
SummationResult euler_transform_phase(const std::function<Scalar(Scalar)>& g, double theta, Scalar a, int depth);

enum class SequenceMode { hutton2, cesaro, xi };
SequenceMode parse_sequence_mode(const std::string& s);

/// Generalized limit of s_0..s_{count-1}.
SummationResult t_sequence_limit(const std::function<Scalar(int)>& seq, int count, SequenceMode mode);

/// zeta(s) from 1/(1 - 2^{1-s}) sum_k 2^{-(k+1)} sum_j (-1)^j C(k,j) (j+1)^{-s}.
SummationResult hasse_zeta(Scalar s, int outer_terms);

}  // namespace summa
