/// \file fraceval.hpp
/// \brief Direct evaluation of finite sums and products at arbitrary complex
/// upper bounds through limits in an auxiliary horizon s.

#pragma once

#include <functional>
#include <string>

#include "summa/kernel.hpp"
#include "summa/sumcalc.hpp"
#include "summa/summability.hpp"

namespace summa {

enum class EvalMode { semilinear, general_asymptotic, oscillating, convoluted };
EvalMode parse_eval_mode(const std::string& s);
const char* to_string(EvalMode m);

struct EvalConfig {
    int s_horizon = 10000;
    int m_order = 1;
    EvalMode mode = EvalMode::general_asymptotic;
    /// Keep doubling s until the value moves by less than tolerance (relative), up to s_cap.
    bool auto_double = true;
    double tolerance = 1e-10;
    /// Raise m above m_order while the first omitted correction term exceeds tolerance.
    bool auto_order = true;
    /// Aitken extrapolation over the doubling sequence; the semilinear mode always uses it.
    bool extrapolate = false;
    int s_cap = 1000000;

    void validate() const;
};

/// m = 0 form; g must be nearly convergent.
SummationResult eval_semilinear(const FunctionOracle& g, Scalar a, Scalar n, const EvalConfig& cfg = {});
SummationResult eval_general(const FunctionOracle& g, Scalar a, Scalar n, const EvalConfig& cfg = {});
/// sum_{k=a}^n e^{i theta k} g(k)
SummationResult eval_oscillating(const FunctionOracle& g, double theta, Scalar a, Scalar n,
                                 const EvalConfig& cfg = {});
/// Same value through sum_{k>=a} minus sum_{k>=n+1}, both as T-values.
SummationResult eval_oscillating_split(const FunctionOracle& g, double theta, Scalar a, Scalar n);
/// sum_{k=a}^n e^{i theta k} g(k, n)
SummationResult eval_convoluted(const BivariateOracle& g, Scalar a, Scalar n, const EvalConfig& cfg = {},
                                double theta = 0.0);
/// sum_{k=a}^n s_k g(k) for a periodic s, through its mean and phase components.
SummationResult eval_periodic(const SignSequence& s, const FunctionOracle& g, Scalar a, Scalar n,
                              const EvalConfig& cfg = {});
/// prod_{k=a}^n g(k) = exp(sum log g); g must stay real and positive, n real.
SummationResult eval_product(const FunctionOracle& g, Scalar a, Scalar n, const EvalConfig& cfg = {});

/// Limit over the horizon s of correction(s) + sum_{k=0}^s term(k), doubling s per cfg.
SummationResult horizon_sequence_limit(const std::function<Scalar(long)>& term,
                                       const std::function<Scalar(long)>& correction, const EvalConfig& cfg);

struct RecurrenceReport {
    double recurrence_residual = 0;   // |f(n) - f(n-1) - g(n)|
    double translation_residual = 0;  // |sum_{k=a}^n g(k+c) - sum_{k=a+c}^{n+c} g(k)|
    bool passed = false;
};

RecurrenceReport check_recurrence(const FunctionOracle& g, Scalar a, Scalar n, double tolerance,
                                  const EvalConfig& cfg = {}, Scalar translation = 0.5);

}  // namespace summa
