#include "summa/sumcalc.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "summa/constants.hpp"

namespace summa {

namespace {

constexpr int kAsymptoticTerms = 40;
constexpr double kZetaPrimeMinusOne = -0.16542114370045092921;
constexpr double kZeta3 = 1.2020569031595942854;

double bplus(int r) { return bernoulli(r, BernoulliConvention::plus_half); }

int shift_count(Scalar x, double shift_to) {
    if (shift_to <= 0) return 0;
    return std::max(0, int(std::ceil(shift_to - x.real())));
}

// Index of the smallest nonzero term; terms with a zero coefficient are skipped.
int min_term_index(const std::vector<Scalar>& terms, const std::vector<bool>& live) {
    int best = -1;
    double mag = 0;
    for (int i = 0; i < int(terms.size()); ++i) {
        if (!live[i]) continue;
        double t = std::abs(terms[i]);
        if (best < 0 || t < mag) {
            best = i;
            mag = t;
        }
        if (t == 0) break;
    }
    return best;
}

// Sums terms either up to the end (fixed) or up to the smallest one (min_term).
SeriesValue truncate(const std::vector<Scalar>& terms, const std::vector<bool>& live, Truncation t,
                     Scalar head, std::optional<Scalar> next) {
    Accumulator acc;
    acc += head;
    SeriesValue out;
    if (t == Truncation::fixed) {
        int used = 0;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            acc += terms[i];
            if (live[i]) ++used;
        }
        out.value = acc.value();
        out.terms_used = used;
        out.error_estimate = next ? std::abs(*next) : 0.0;
        return out;
    }
    int stop = min_term_index(terms, live);
    if (stop < 0) stop = int(terms.size());
    int used = 0;
    for (int i = 0; i < stop; ++i) {
        acc += terms[i];
        if (live[i]) ++used;
    }
    out.value = acc.value();
    out.terms_used = used;
    out.error_estimate = stop < int(terms.size()) ? std::abs(terms[stop]) : (next ? std::abs(*next) : 0.0);
    return out;
}

}  // namespace

Scalar integrate(const FunctionOracle& g, Scalar A, Scalar B) {
    if (g.has_antiderivative()) return g.antiderivative(B) - g.antiderivative(A);
    using boost::math::quadrature::gauss_kronrod;
    const Scalar d = B - A;
    if (d == Scalar(0)) return 0;
    double err_re = 0, err_im = 0;
    auto re = [&](double t) { return (g.value(A + t * d) * d).real(); };
    auto im = [&](double t) { return (g.value(A + t * d) * d).imag(); };
    double vr = gauss_kronrod<double, 61>::integrate(re, 0.0, 1.0, 20, 1e-13, &err_re);
    double vi = gauss_kronrod<double, 61>::integrate(im, 0.0, 1.0, 20, 1e-13, &err_im);
    if (!std::isfinite(vr) || !std::isfinite(vi))
        throw Error(ErrorKind::numeric, "quadrature of " + g.name() + " did not produce a finite value");
    const double scale = std::max(1.0, std::hypot(vr, vi));
    if (std::hypot(err_re, err_im) > 1e-8 * scale)
        throw Error(ErrorKind::numeric, "quadrature of " + g.name() + " failed to reach tolerance");
    return {vr, vi};
}

namespace {

// sum_{k=A}^B g(k) by Euler-Maclaurin, no shifting.
SeriesValue em_core(const FunctionOracle& g, Scalar A, Scalar B, int R, Truncation t) {
    R = std::clamp(R, 1, ConstantTables::instance().bound() - 2);
    const Jet ja = g.taylor(A, R + 1);
    const Jet jb = g.taylor(B, R + 1);
    Scalar head = integrate(g, A, B) + 0.5 * (ja[0] + jb[0]);
    std::vector<Scalar> terms;
    std::vector<bool> live;
    // B_r/r! (g^{(r-1)}(B) - g^{(r-1)}(A)) = B_r/r (c_{r-1}(B) - c_{r-1}(A))
    for (int r = 2; r <= R; r += 2) {
        terms.push_back(bernoulli(r) / r * (jb[r - 1] - ja[r - 1]));
        live.push_back(true);
    }
    std::optional<Scalar> next;
    int rn = (R % 2 == 0) ? R + 2 : R + 1;
    if (rn - 1 <= R + 1) next = bernoulli(rn) / rn * (jb[rn - 1] - ja[rn - 1]);
    return truncate(terms, live, t, head, next);
}

// sum_{k=A}^B e^{i theta k} g(k) by the Theta_r (theta != pi) or N_r (theta = pi) series.
SeriesValue phase_core(const FunctionOracle& g, double theta, bool alternating, Scalar A, Scalar B, int R,
                       Truncation t) {
    R = std::clamp(R, 0, ConstantTables::instance().bound() - 1);
    const Jet ja = g.taylor(A, R + 1);
    const Jet jb = g.taylor(B, R + 1);
    const Scalar pa = phase(theta, A), pb = phase(theta, B);
    const std::vector<Scalar>* th = alternating ? nullptr : &ConstantTables::instance().theta_table(theta);
    auto coeff = [&](int r) -> Scalar { return alternating ? Scalar(n_alt(r)) : -(*th)[r]; };
    std::vector<Scalar> terms;
    std::vector<bool> live;
    for (int r = 0; r <= R; ++r) {
        Scalar c = coeff(r);
        terms.push_back(c * (pb * jb[r] - pa * ja[r]));
        live.push_back(std::abs(c) > 1e-300);
    }
    Scalar next = coeff(R + 1) * (pb * jb[R + 1] - pa * ja[R + 1]);
    return truncate(terms, live, t, pa * ja[0], next);
}

Scalar direct_phase_sum(const FunctionOracle& g, double theta, Scalar from, int count) {
    Accumulator acc;
    for (int j = 0; j < count; ++j) {
        Scalar k = from + double(j);
        acc += (theta == 0 ? Scalar(1) : phase(theta, k)) * g.value(k);
    }
    return acc.value();
}

template <class Core>
SeriesValue shifted_sum(const FunctionOracle& g, double theta, Scalar a, Scalar n, double shift_to, Core core) {
    const int ka = shift_count(a, shift_to);
    const int kn = shift_count(n, shift_to);
    SeriesValue v = core(a + double(ka), n + double(kn));
    v.value += direct_phase_sum(g, theta, a, ka) - direct_phase_sum(g, theta, n + 1.0, kn);
    return v;
}

void check_order(const FunctionOracle& g, int m) {
    if (auto o = g.asymptotic_order(); o && *o > m)
        throw Error(ErrorKind::precondition, g.name() + " has asymptotic order " + std::to_string(*o) +
                                                  " which exceeds m = " + std::to_string(m));
}

}  // namespace

BoundaryMode parse_boundary_mode(const std::string& s) {
    if (s == "semilinear_limit") return BoundaryMode::semilinear_limit;
    if (s == "em_asymptotic") return BoundaryMode::em_asymptotic;
    if (s == "xi_weighted") return BoundaryMode::xi_weighted;
    throw Error(ErrorKind::configuration, "unknown boundary mode '" + s + "'");
}

Scalar finite_sum(const FunctionOracle& g, Scalar a, Scalar n) {
    const Scalar count = n - a + 1.0;
    if (is_integer(count) && std::abs(count.real()) <= 2e6) {
        long c = std::lround(count.real());
        if (c >= 0) return direct_phase_sum(g, 0, a, int(c));
        // sum_{k=a}^{n} = -sum_{k=n+1}^{a-1} for n < a - 1
        return -direct_phase_sum(g, 0, n + 1.0, int(-c));
    }
    return em_sum(g, a, n, kAsymptoticTerms, Truncation::min_term).value;
}

SeriesValue em_sum(const FunctionOracle& g, Scalar a, Scalar n, int max_order, Truncation truncation,
                   double shift_to) {
    return shifted_sum(g, 0.0, a, n, shift_to,
                       [&](Scalar A, Scalar B) { return em_core(g, A, B, max_order, truncation); });
}

SeriesValue alt_em_sum(const FunctionOracle& g, Scalar a, Scalar n, int max_order, Truncation truncation,
                       double shift_to) {
    return shifted_sum(g, std::numbers::pi, a, n, shift_to, [&](Scalar A, Scalar B) {
        return phase_core(g, std::numbers::pi, true, A, B, max_order, truncation);
    });
}

SeriesValue osc_em_sum(const FunctionOracle& g, double theta, Scalar a, Scalar n, int max_order,
                       Truncation truncation, double shift_to) {
    if (std::abs(std::remainder(theta, 2 * std::numbers::pi)) < 1e-14)
        throw Error(ErrorKind::configuration, "theta = 0 mod 2 pi is a plain sum; use em_sum");
    return shifted_sum(g, theta, a, n, shift_to, [&](Scalar A, Scalar B) {
        return phase_core(g, theta, false, A, B, max_order, truncation);
    });
}

namespace {

// f^{(r)}(N) ~ sum_j B_j^+/j! g^{(j+r-1)}(N), after moving N to at least 40.
SeriesValue derivative_asymptotic(const FunctionOracle& g, Scalar n, int r) {
    const int K = shift_count(n, 40.0);
    const Scalar N = n + double(K);
    const int J = kAsymptoticTerms;
    const Jet c = g.taylor(N, J + r);
    std::vector<Scalar> terms;
    std::vector<bool> live;
    for (int j = 0; j <= J; ++j) {
        const int q = j + r - 1;
        // g^{(q)}/j! = c_q q!/j!
        double ratio = 1;
        for (int i = j + 1; i <= q; ++i) ratio *= i;
        const double b = bplus(j);
        terms.push_back(b * ratio * c[q]);
        live.push_back(b != 0);
    }
    SeriesValue v = truncate(terms, live, Truncation::min_term, 0.0, std::nullopt);
    Accumulator acc;
    acc += v.value;
    for (int i = 1; i <= K; ++i) acc += -g.derivative(r, n + double(i));
    v.value = acc.value();
    return v;
}

// Double series of the evaluated Euler-Maclaurin formula, truncated at z.
Scalar xi_weighted_value(const FunctionOracle& g, Scalar a, Scalar n, int l, int z) {
    const Jet c = g.taylor(a + 1.0, z + 1);
    Accumulator outer;
    Scalar d = n - a;
    for (int k = l; k <= z; ++k) {
        Accumulator inner;
        for (int r = 0; r <= z - k; ++r) {
            const int q = k + r - 1;
            // (-1)^r B_r^+ g^{(q)}(a+1) / r!
            double ratio = 1;
            for (int i = r + 1; i <= q; ++i) ratio *= i;
            if (q < r)
                for (int i = q + 1; i <= r; ++i) ratio /= i;
            inner += ((r % 2) ? -1.0 : 1.0) * bplus(r) * ratio * c[q];
        }
        Scalar p = std::pow(d, double(k - l)) / factorial(k - l);
        if (k == l) p = 1.0;
        outer += p * inner.value();
    }
    return outer.value();
}

}  // namespace

SeriesValue em_boundary_constant(const FunctionOracle& g, int r, BoundaryMode mode, Scalar a, int z) {
    if (r < 1) throw Error(ErrorKind::configuration, "boundary constants are defined for r >= 1");
    switch (mode) {
        case BoundaryMode::em_asymptotic:
            return derivative_asymptotic(g, a - 1.0, r);
        case BoundaryMode::xi_weighted: {
            if (z < r + 1) throw Error(ErrorKind::configuration, "xi_weighted needs z > r");
            SeriesValue v;
            v.value = xi_weighted_value(g, a, a - 1.0, r, z);
            v.error_estimate = std::abs(v.value - xi_weighted_value(g, a, a - 1.0, r, z - 1));
            v.terms_used = z;
            return v;
        }
        case BoundaryMode::semilinear_limit: {
            auto order = g.asymptotic_order();
            if (!order)
                throw Error(ErrorKind::configuration,
                            g.name() + " does not declare an asymptotic order; semilinear_limit needs one");
            if (r <= *order)
                throw Error(ErrorKind::precondition, "semilinear_limit needs r above the asymptotic order");
            // lim_N g^{(r-1)}(N) - sum_{k=a}^N g^{(r)}(k), doubling N
            Accumulator acc;
            Scalar k = a;
            long N = 1024, done = 0;
            Scalar prev = 0;
            SeriesValue v;
            for (; N <= (1L << 20); N *= 2) {
                for (; done < N; ++done, k += 1.0) acc += g.derivative(r, k);
                Scalar cur = g.derivative(r - 1, k - 1.0) - acc.value();
                v.error_estimate = std::abs(cur - prev);
                v.value = cur;
                v.terms_used = int(N);
                if (N > 1024 && v.error_estimate < 1e-13 * std::max(1.0, std::abs(cur))) break;
                prev = cur;
            }
            return v;
        }
    }
    throw Error(ErrorKind::configuration, "unhandled boundary mode");
}

SeriesValue sum_derivative(const FunctionOracle& g, Scalar a, Scalar n, int r, BoundaryMode mode, int z) {
    if (r < 1) throw Error(ErrorKind::configuration, "derivative order must be positive");
    if (mode == BoundaryMode::em_asymptotic) return derivative_asymptotic(g, n, r);
    if (mode == BoundaryMode::xi_weighted && std::abs(n - a) < 1.0 + 1e-12) {
        SeriesValue v;
        v.value = xi_weighted_value(g, a, n, r, z);
        v.error_estimate = std::abs(v.value - xi_weighted_value(g, a, n, r, z - 1));
        v.terms_used = z;
        return v;
    }
    SeriesValue c = em_boundary_constant(g, r, mode, a, z);
    c.value += finite_sum(g.derived(r), a, n);
    return c;
}

SeriesValue sum_derivative_convoluted(const BivariateOracle& g, Scalar a, Scalar n) {
    const FunctionOracle h = g.freeze_n(n);
    SeriesValue out = sum_derivative(h, a, n, 1, BoundaryMode::em_asymptotic);
    // k -> d/dn g(k, n): exact values, k-jets by Richardson-extrapolated central differences in n
    const double step = 1e-3 * std::max(1.0, std::abs(n));
    auto jet_dn = [g, n, step](Scalar k, int R) {
        auto central = [&](double s) {
            Jet p = g.taylor_k(k, n + s, R), m = g.taylor_k(k, n - s, R);
            return jet::scale(jet::sub(p, m), 1.0 / (2 * s));
        };
        Jet d1 = central(step), d2 = central(step / 2);
        Jet r = jet::scale(jet::sub(jet::scale(d2, 4.0), d1), 1.0 / 3.0);
        r[0] = g.partial_n(k, n);
        return r;
    };
    FunctionOracle dn(g.name() + " d/dn", jet_dn, [g, n](Scalar k) { return g.partial_n(k, n); }, {},
                      g.asymptotic_order(), a.real());
    out.value += finite_sum(dn, a, n);
    return out;
}

namespace {

Scalar osc_tail_value(const FunctionOracle& g, double theta, Scalar a, int m, long count, bool alternating) {
    const Scalar N = a + double(count - 1);
    Scalar v = direct_phase_sum(g, theta, a, int(count));
    const Jet c = g.taylor(N, m);
    const Scalar pn = phase(theta, N);
    Accumulator acc;
    acc += v;
    if (alternating) {
        for (int r = 0; r <= m; ++r) acc += -pn * n_alt(r) * c[r];
    } else {
        const auto& th = ConstantTables::instance().theta_table(theta);
        for (int r = 0; r <= m; ++r) acc += pn * th[r] * c[r];
    }
    return acc.value();
}

SummationResult tail_result(const FunctionOracle& g, double theta, Scalar a, int m, Scalar n_max, bool alt) {
    if (m < 0 || m >= ConstantTables::instance().bound()) throw Error(ErrorKind::configuration, "m out of range");
    const double span = (n_max - a).real();
    if (span < 1) throw Error(ErrorKind::configuration, "n_max must exceed the lower bound");
    const long count = long(std::floor(span + 1e-9)) + 1;
    SummationResult out;
    out.method = Method::direct;
    out.value = osc_tail_value(g, theta, a, m, count, alt);
    out.terms_used = int(count);
    const double err = std::abs(out.value - osc_tail_value(g, theta, a, m, (count + 1) / 2, alt));
    out.error_estimate = err;
    out.diagnostics = err < 1e-8 * std::max(1.0, std::abs(out.value)) ? Diagnostics::converged
                                                                     : Diagnostics::limit_of_schedule;
    return out;
}

}  // namespace

SummationResult osc_t_value(const FunctionOracle& g, double theta, Scalar a, int m, Scalar n_max) {
    if (std::abs(std::remainder(theta, 2 * std::numbers::pi)) < 1e-14)
        throw Error(ErrorKind::configuration, "theta = 0 mod 2 pi has no oscillating T-value");
    check_order(g, m);
    return tail_result(g, theta, a, m, n_max, false);
}

SummationResult alt_divergent_value(const FunctionOracle& g, Scalar a, int m, Scalar n_max) {
    check_order(g, m);
    return tail_result(g, std::numbers::pi, a, m, n_max, true);
}

// ------------------------------------------------------------------ periodic sequences

SignSequence::SignSequence(std::vector<Scalar> v) : values(std::move(v)) {
    if (values.empty()) throw Error(ErrorKind::configuration, "a periodic sequence needs at least one value");
}

Scalar SignSequence::at(long k) const {
    const long p = period();
    return values[std::size_t(((k % p) + p) % p)];
}

Scalar SignSequence::mean() const { return compensated_sum(values) / double(period()); }

std::vector<Scalar> SignSequence::dft() const {
    const int p = period();
    std::vector<Scalar> nu(p);
    for (int m = 0; m < p; ++m) {
        Accumulator acc;
        for (int k = 0; k < p; ++k) acc += values[k] * phase(-2 * std::numbers::pi * m / p, double(k));
        nu[m] = acc.value() / double(p);
    }
    return nu;
}

SignSequence SignSequence::zero_mean() const {
    const Scalar mu = mean();
    std::vector<Scalar> v(values);
    for (auto& x : v) x -= mu;
    return SignSequence(std::move(v));
}

SignSequence SignSequence::rotated(long x) const {
    std::vector<Scalar> v(values.size());
    for (int k = 0; k < period(); ++k) v[k] = at(k + x);
    return SignSequence(std::move(v));
}

DftSplit dft_split(const std::vector<Scalar>& values) {
    SignSequence s(values);
    DftSplit out;
    const auto nu = s.dft();
    out.mean = nu[0];
    out.zero_mean = s.zero_mean();
    double scale = 0;
    for (auto v : values) scale = std::max(scale, std::abs(v));
    for (int m = 1; m < s.period(); ++m)
        if (std::abs(nu[m]) > 1e-13 * std::max(1.0, scale))
            out.components.push_back({m, 2 * std::numbers::pi * m / s.period(), nu[m]});
    return out;
}

std::vector<Scalar> sign_seq_table_S(const SignSequence& s, int r_max, long x) {
    const int p = s.period();
    double scale = 0;
    for (auto v : s.values) scale = std::max(scale, std::abs(v));
    if (std::abs(s.mean()) > 1e-12 * std::max(1.0, scale))
        throw Error(ErrorKind::precondition, "S_r needs a zero-mean sequence; split it with dft_split first");
    if (r_max < 0 || r_max >= ConstantTables::instance().bound())
        throw Error(ErrorKind::configuration, "r_max out of range");
    // t_k = s_{k+x-1}, k = 1..p
    std::vector<Scalar> t(p + 1);
    for (int k = 1; k <= p; ++k) t[k] = s.at(k + x - 1);
    auto moment = [&](int e) {
        Accumulator acc;
        for (int k = 1; k <= p; ++k) acc += t[k] * std::pow(double(k), e);
        return acc.value();
    };
    std::vector<Scalar> S(r_max + 1);
    const double P = p;
    for (int r = 0; r <= r_max; ++r) {
        Accumulator acc;
        acc += -moment(r + 1) / (P * (r + 1));
        for (int m = 0; m < r; ++m)
            acc += -std::pow(P, r - m) / (r + 1) * binomial(r + 1, m) * S[m];
        S[r] = acc.value();
    }
    return S;
}

SummationResult periodic_accelerate(const SignSequence& s, const FunctionOracle& g, long a, int m, long n_max) {
    check_order(g, m);
    if (n_max <= a) throw Error(ErrorKind::configuration, "n_max must exceed the lower bound");
    auto value_at = [&](long n) {
        Accumulator acc;
        for (long k = a; k <= n; ++k) acc += s.at(k) * g.value(double(k));
        const auto S = sign_seq_table_S(s, m, n + 1);
        const Jet c = g.taylor(double(n), m);
        for (int r = 0; r <= m; ++r) acc += S[r] * c[r];
        return acc.value();
    };
    SummationResult out;
    out.method = Method::direct;
    out.value = value_at(n_max);
    out.terms_used = int(n_max - a + 1);
    const double err = std::abs(out.value - value_at(a + (n_max - a) / 2));
    out.error_estimate = err;
    out.diagnostics = err < 1e-8 * std::max(1.0, std::abs(out.value)) ? Diagnostics::converged
                                                                     : Diagnostics::limit_of_schedule;
    return out;
}

// ------------------------------------------------------------------ factorial families

FactorialFamily parse_factorial_family(const std::string& s) {
    if (s == "factorial") return FactorialFamily::factorial;
    if (s == "hyperfactorial") return FactorialFamily::hyperfactorial;
    if (s == "superfactorial") return FactorialFamily::superfactorial;
    if (s == "second_factorial") return FactorialFamily::second_factorial;
    throw Error(ErrorKind::configuration, "unknown factorial family '" + s + "'");
}

// -lambda/6 + sum_{k>=2} (-1)^k zeta_k / (k (k+1) (k+2))
double hyperfactorial_constant() { return -0.041776256363879366563; }

AsymptoticEvaluation stirling_glaisher_expansion(FactorialFamily kind, double n) {
    if (!(n >= 1)) throw Error(ErrorKind::domain, "factorial-type expansions need n >= 1");
    const double two_pi = 2 * std::numbers::pi;
    AsymptoticEvaluation out;
    switch (kind) {
        case FactorialFamily::factorial:
            out.log_value = -1 + 0.5 * std::log(two_pi * (n + 1)) + n * (std::log(n + 1) - 1);
            out.order_note = "relative error O(1/n)";
            break;
        case FactorialFamily::hyperfactorial:
            out.log_value = (1 + n) * (1 + n) / 2 * std::log(1 + n) + hyperfactorial_constant() - (n + n * n / 4) -
                            std::log(n) / 6 - 0.5 * std::lgamma(n + 1);
            out.order_note = "relative error O(1/n)";
            break;
        case FactorialFamily::superfactorial: {
            // log G(z + 1), z = n + 1
            const double z = n + 1;
            out.log_value = z * z / 2 * std::log(z) - 0.75 * z * z + z / 2 * std::log(two_pi) -
                            std::log(z) / 12 + kZetaPrimeMinusOne;
            out.order_note = "relative error O(1/n^2)";
            break;
        }
        case FactorialFamily::second_factorial:
            out.log_value = kZeta3 / (4 * std::numbers::pi * std::numbers::pi) +
                            (2 * n * n * n + 3 * n * n + n) / 6 * std::log(n) + n / 12 - n * n * n / 9;
            out.order_note = "relative error O(1/n)";
            break;
    }
    out.value = std::exp(out.log_value);
    return out;
}

double factorial_family_exact_log(FactorialFamily kind, int n) {
    if (n < 0) throw Error(ErrorKind::domain, "negative argument");
    double s = 0, c = 0;
    for (int k = 1; k <= n; ++k) {
        double t = 0;
        switch (kind) {
            case FactorialFamily::factorial: t = std::log(double(k)); break;
            case FactorialFamily::hyperfactorial: t = k * std::log(double(k)); break;
            case FactorialFamily::superfactorial: t = std::lgamma(k + 1.0); break;
            case FactorialFamily::second_factorial: t = double(k) * k * std::log(double(k)); break;
        }
        double y = t - c, u = s + y;
        c = (u - s) - y;
        s = u;
    }
    return s;
}

}  // namespace summa
