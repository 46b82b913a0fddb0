#include "summa/fraceval.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "summa/constants.hpp"

namespace summa {

namespace {

bool is_zero_angle(double theta) { return std::abs(std::remainder(theta, 2 * std::numbers::pi)) < 1e-14; }

// Aitken's delta-squared on three successive doublings.
Scalar aitken(Scalar v0, Scalar v1, Scalar v2) {
    const Scalar d1 = v1 - v0, d2 = v2 - v1, dd = d2 - d1;
    if (std::abs(dd) <= 1e-14 * std::max(std::abs(d1), std::abs(d2)) || std::abs(dd) == 0) return v2;
    return v2 - d2 * d2 / dd;
}

// Limit over the horizon s of correction(s) + sum_{k=0}^s term(k).
template <class Term, class Correction>
SummationResult horizon_limit(Term term, Correction correction, const EvalConfig& cfg) {
    cfg.validate();
    Accumulator acc;
    long done = 0;
    auto extend = [&](long s) {
        for (; done <= s; ++done) acc += term(done);
    };
    std::vector<Scalar> hist;
    auto push = [&](long s) {
        extend(s);
        hist.push_back(correction(s) + acc.value());
    };
    auto best = [&](std::size_t upto) {
        if (!cfg.extrapolate || upto < 3) return hist[upto - 1];
        return aitken(hist[upto - 3], hist[upto - 2], hist[upto - 1]);
    };
    long s = cfg.s_horizon;
    if (cfg.extrapolate) push(s / 4);
    push(s / 2);
    push(s);
    Scalar prev = best(hist.size() - 1), cur = best(hist.size());
    auto close = [&] { return std::abs(cur - prev) <= cfg.tolerance * std::max(1.0, std::abs(cur)); };
    bool floor_hit = false;
    while (cfg.auto_double && !close() && 2 * s <= cfg.s_cap) {
        push(2 * s);
        const Scalar next = best(hist.size());
        // stop once rounding noise dominates: the change no longer shrinks
        if (std::abs(next - cur) >= std::abs(cur - prev)) {
            floor_hit = true;
            break;
        }
        s *= 2;
        prev = cur;
        cur = next;
    }
    SummationResult out;
    out.method = Method::direct;
    out.value = cur;
    out.terms_used = int(s + 1);
    out.error_estimate = std::abs(cur - prev);
    if (!std::isfinite(cur.real()) || !std::isfinite(cur.imag())) out.diagnostics = Diagnostics::blowup_detected;
    else if (close()) out.diagnostics = Diagnostics::converged;
    else out.diagnostics = floor_hit ? Diagnostics::plateau : Diagnostics::limit_of_schedule;
    return out;
}

int order_for(const EvalConfig& cfg, std::optional<int> declared) {
    int m = std::max(cfg.m_order, declared.value_or(0));
    if (m >= ConstantTables::instance().bound())
        throw Error(ErrorKind::configuration, "differentiation order beyond the constant tables");
    return m;
}

constexpr int kMaxExtraOrder = 8;

// Raises m while the first omitted correction term at s_horizon exceeds the tolerance.
template <class Weight, class JetAt>
int raise_order(int m, const EvalConfig& cfg, Weight weight, JetAt jet_at) {
    if (!cfg.auto_order) return m;
    const int cap = std::min(m + kMaxExtraOrder, ConstantTables::instance().bound() - 2);
    const Jet c = jet_at(double(cfg.s_horizon), cap + 1);
    while (m < cap && std::abs(weight(m + 1) * c[m + 1]) > cfg.tolerance) ++m;
    return m;
}

Scalar poly_weight(double theta, Scalar a, Scalar n, int r);

// Omega_r(n) - Omega_r(a-1), or b_r(n) - b_r(a-1) when theta = 0 mod 2 pi.
Scalar poly_weight(double theta, Scalar a, Scalar n, int r) {
    if (is_zero_angle(theta)) return faulhaber_b(r, n) - faulhaber_b(r, a - 1.0);
    return omega_r(theta, r, n) - omega_r(theta, r, a - 1.0);
}

std::vector<Scalar> polynomial_weights(double theta, Scalar a, Scalar n, int m) {
    std::vector<Scalar> w(m + 1);
    for (int r = 0; r <= m; ++r) w[r] = poly_weight(theta, a, n, r);
    return w;
}

Scalar ph(double theta, Scalar x) { return is_zero_angle(theta) ? Scalar(1) : phase(theta, x); }

SummationResult eval_phase(const FunctionOracle& g, double theta, Scalar a, Scalar n, int m,
                           const EvalConfig& cfg) {
    cfg.validate();
    m = raise_order(m, cfg, [&](int r) { return poly_weight(theta, a, n, r); },
                    [&](Scalar s, int R) { return g.taylor(s, R); });
    const auto w = polynomial_weights(theta, a, n, m);
    auto term = [&](long k) {
        const Scalar x = a + double(k), y = n + double(k) + 1.0;
        return ph(theta, x) * g.value(x) - ph(theta, y) * g.value(y);
    };
    auto correction = [&](long s) {
        const Jet c = g.taylor(double(s), m);
        Scalar t = 0;
        for (int r = 0; r <= m; ++r) t += w[r] * c[r];
        return ph(theta, double(s)) * t;
    };
    return horizon_limit(term, correction, cfg);
}

}  // namespace

EvalMode parse_eval_mode(const std::string& s) {
    if (s == "semilinear") return EvalMode::semilinear;
    if (s == "general_asymptotic" || s == "general") return EvalMode::general_asymptotic;
    if (s == "oscillating") return EvalMode::oscillating;
    if (s == "convoluted") return EvalMode::convoluted;
    throw Error(ErrorKind::configuration, "unknown evaluation mode '" + s + "'");
}

const char* to_string(EvalMode m) {
    switch (m) {
        case EvalMode::semilinear: return "semilinear";
        case EvalMode::general_asymptotic: return "general_asymptotic";
        case EvalMode::oscillating: return "oscillating";
        case EvalMode::convoluted: return "convoluted";
    }
    return "?";
}

void EvalConfig::validate() const {
    if (s_horizon < 10) throw Error(ErrorKind::configuration, "s_horizon must be at least 10");
    if (m_order < 0 || m_order >= ConstantTables::instance().bound())
        throw Error(ErrorKind::configuration, "m_order out of range");
    if (s_cap < s_horizon) throw Error(ErrorKind::configuration, "s_cap below s_horizon");
    if (!(tolerance > 0)) throw Error(ErrorKind::configuration, "tolerance must be positive");
}

SummationResult eval_semilinear(const FunctionOracle& g, Scalar a, Scalar n, const EvalConfig& cfg) {
    if (auto o = g.asymptotic_order(); o && *o > 0)
        throw Error(ErrorKind::precondition, g.name() + " is not nearly convergent; use eval_general");
    EvalConfig c = cfg;
    c.auto_order = false;
    c.extrapolate = true;
    return eval_phase(g, 0.0, a, n, 0, c);
}

SummationResult eval_general(const FunctionOracle& g, Scalar a, Scalar n, const EvalConfig& cfg) {
    return eval_phase(g, 0.0, a, n, order_for(cfg, g.asymptotic_order()), cfg);
}

SummationResult eval_oscillating(const FunctionOracle& g, double theta, Scalar a, Scalar n, const EvalConfig& cfg) {
    return eval_phase(g, theta, a, n, order_for(cfg, g.asymptotic_order()), cfg);
}

namespace {

// T-value of sum_{j>=0} e^{i theta (c+j)} g(c+j)
SummationResult phase_tail(const FunctionOracle& g, double theta, Scalar c) {
    auto f = [&g](Scalar k) { return g.value(k); };
    if (std::abs(theta - std::numbers::pi) < 1e-15) return euler_transform_sum(f, c, 60);
    if (std::abs(1.0 / (2 * std::sin(theta / 2))) < 0.9) return euler_transform_phase(f, theta, c, 60);
    // partial sum to c+199 plus the Theta_r tail
    return osc_t_value(g.with_order(std::nullopt), theta, c, 6, c + 199.0);
}

}  // namespace

SummationResult eval_oscillating_split(const FunctionOracle& g, double theta, Scalar a, Scalar n) {
    if (is_zero_angle(theta)) throw Error(ErrorKind::configuration, "the split route needs theta != 0 mod 2 pi");
    const auto head = phase_tail(g, theta, a);
    const auto tail = phase_tail(g, theta, n + 1.0);
    SummationResult out = head;
    out.value = head.value - tail.value;
    out.error_estimate = head.error_estimate.value_or(0) + tail.error_estimate.value_or(0);
    out.terms_used = head.terms_used + tail.terms_used;
    if (tail.diagnostics != Diagnostics::converged) out.diagnostics = tail.diagnostics;
    return out;
}

SummationResult eval_convoluted(const BivariateOracle& g, Scalar a, Scalar n, const EvalConfig& cfg, double theta) {
    cfg.validate();
    const int m = raise_order(order_for(cfg, g.asymptotic_order()), cfg,
                              [&](int r) { return poly_weight(theta, a, n, r); },
                              [&](Scalar s, int R) { return g.taylor_k(s, n, R); });
    const auto w = polynomial_weights(theta, a, n, m);
    auto term = [&](long k) {
        const Scalar x = a + double(k), y = n + double(k) + 1.0;
        return ph(theta, x) * g.value(x, n) - ph(theta, y) * g.value(y, n);
    };
    auto correction = [&](long s) {
        const Jet c = g.taylor_k(double(s), n, m);
        Scalar t = 0;
        for (int r = 0; r <= m; ++r) t += w[r] * c[r];
        return ph(theta, double(s)) * t;
    };
    return horizon_limit(term, correction, cfg);
}

SummationResult eval_periodic(const SignSequence& s, const FunctionOracle& g, Scalar a, Scalar n,
                              const EvalConfig& cfg) {
    const auto split = dft_split(s.values);
    SummationResult out;
    out.method = Method::direct;
    out.diagnostics = Diagnostics::converged;
    double err = 0;
    auto absorb = [&](const SummationResult& r, Scalar weight) {
        out.value += weight * r.value;
        err += std::abs(weight) * r.error_estimate.value_or(0);
        out.terms_used = std::max(out.terms_used, r.terms_used);
        if (r.diagnostics != Diagnostics::converged) out.diagnostics = r.diagnostics;
    };
    if (std::abs(split.mean) > 0) absorb(eval_general(g, a, n, cfg), split.mean);
    for (const auto& c : split.components) absorb(eval_oscillating(g, c.theta, a, n, cfg), c.nu);
    out.error_estimate = err;
    return out;
}

SummationResult eval_product(const FunctionOracle& g, Scalar a, Scalar n, const EvalConfig& cfg) {
    if (std::abs(n.imag()) > 0 || std::abs(a.imag()) > 0)
        throw Error(ErrorKind::domain, "products are evaluated on the real axis only; supply sum log g for complex n");
    auto checked = [name = g.name()](Scalar v) {
        if (std::abs(v.imag()) > 1e-14 * std::abs(v.real()) || !(v.real() > 0))
            throw Error(ErrorKind::domain, "product factor " + name + " is not real positive");
        return v;
    };
    FunctionOracle lg(
        "log(" + g.name() + ")",
        [g, checked](Scalar k, int R) {
            Jet j = g.taylor(k, R);
            checked(j[0]);
            return jet::log(j);
        },
        [g, checked](Scalar k) { return std::log(checked(g.value(k))); }, {}, std::nullopt, g.domain_start());
    SummationResult r = eval_general(lg, a, n, cfg);
    const Scalar v = std::exp(r.value);
    r.error_estimate = std::abs(v) * r.error_estimate.value_or(0);
    r.value = v;
    return r;
}

SummationResult horizon_sequence_limit(const std::function<Scalar(long)>& term,
                                       const std::function<Scalar(long)>& correction, const EvalConfig& cfg) {
    return horizon_limit(term, correction, cfg);
}

RecurrenceReport check_recurrence(const FunctionOracle& g, Scalar a, Scalar n, double tolerance,
                                  const EvalConfig& cfg, Scalar c) {
    RecurrenceReport rep;
    const Scalar f1 = eval_general(g, a, n, cfg).value;
    const Scalar f0 = eval_general(g, a, n - 1.0, cfg).value;
    rep.recurrence_residual = std::abs(f1 - f0 - g.value(n));
    const Scalar shifted = eval_general(g.shifted(c), a, n, cfg).value;
    const Scalar moved = eval_general(g, a + c, n + c, cfg).value;
    rep.translation_residual = std::abs(shifted - moved);
    rep.passed = rep.recurrence_residual < tolerance && rep.translation_residual < tolerance;
    return rep;
}

}  // namespace summa
