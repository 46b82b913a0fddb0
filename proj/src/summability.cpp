#include "summa/summability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace summa {

const char* to_string(Method m) {
    switch (m) {
        case Method::xi: return "xi";
        case Method::lindelof: return "lindelof";
        case Method::euler: return "euler";
        case Method::cesaro: return "cesaro";
        case Method::direct: return "direct";
    }
    return "unknown";
}

const char* to_string(Diagnostics d) {
    switch (d) {
        case Diagnostics::converged: return "converged";
        case Diagnostics::plateau: return "plateau";
        case Diagnostics::blowup_detected: return "blowup_detected";
        case Diagnostics::limit_of_schedule: return "limit_of_schedule";
    }
    return "unknown";
}

TaylorStream TaylorStream::from_oracle(const FunctionOracle& f, Scalar x0, Scalar x, int R) {
    Jet c = f.taylor(x0, R);
    const Scalar dx = x - x0;
    std::vector<Scalar> a(c.size());
    Scalar p = 1.0;
    for (size_t j = 0; j < c.size(); ++j) {
        a[j] = c[j] * p;
        p *= dx;
    }
    TaylorStream s;
    s.coefficient = [a](int j) { return j < int(a.size()) ? a[j] : Scalar(0); };
    s.x0 = x0;
    s.x = x;
    Jet at = f.taylor(x, 2);
    s.f_at_x = at[0];
    s.f_prime_at_x = at[1];
    s.f_second_at_x = 2.0 * at[2];
    return s;
}

TaylorStream TaylorStream::from_coefficients(std::vector<Scalar> a) {
    TaylorStream s;
    s.coefficient = [a = std::move(a)](int j) { return j < int(a.size()) ? a[j] : Scalar(0); };
    return s;
}

double chi(int n, int j) {
    if (n < 1) throw Error(ErrorKind::configuration, "chi: n must be positive");
    if (j > n) return 0.0;
    double p = 1.0;
    for (int k = 1; k <= j; ++k) p *= 1.0 - double(k - 1) / n;
    return p;
}

namespace {

Scalar xi_value(const std::vector<Scalar>& a, int n, int m, double* max_partial) {
    Accumulator acc;
    double w = 1.0;  // chi_n(j + m), built incrementally
    for (int k = 1; k <= m; ++k) w *= 1.0 - double(k - 1) / n;
    double peak = 0;
    for (int j = 0; j + m <= n && j < int(a.size()); ++j) {
        if (j > 0) w *= 1.0 - double(j + m - 1) / n;
        acc += w * a[j];
        peak = std::max(peak, std::abs(acc.value()));
    }
    if (max_partial) *max_partial = peak;
    return acc.value();
}

}  // namespace

Scalar xi_error_term(Scalar f2, Scalar x, Scalar x0, int n, int m, Scalar f, Scalar f1) {
    if (n < 1) throw Error(ErrorKind::configuration, "xi error model: n must be positive");
    const Scalar d = x - x0;
    return (double(m) * (m - 1) * f + 2.0 * double(m) * d * f1 + d * d * f2) / (2.0 * n);
}

double xi_error_estimate(Scalar f2, Scalar x, Scalar x0, int n, int m, Scalar f, Scalar f1) {
    return xi_error_term(f2, x, x0, n, m, f, f1).real();
}

SummationResult xi_sum(const TaylorStream& stream, int n, int shift) {
    if (n < 1) throw Error(ErrorKind::configuration, "xi_sum: n must be at least 1");
    if (shift < 0) throw Error(ErrorKind::configuration, "xi_sum: shift must be nonnegative");
    std::vector<Scalar> a(n + 1);
    for (int j = 0; j <= n; ++j) a[j] = stream.coefficient(j);

    SummationResult r;
    r.method = Method::xi;
    r.terms_used = std::max(0, n + 1 - shift);
    double peak = 0;
    r.value = xi_value(a, n, shift, &peak);

    std::optional<double> err;
    if (stream.f_second_at_x) {
        const Scalar f = stream.f_at_x.value_or(Scalar(0));
        const Scalar f1 = stream.f_prime_at_x.value_or(Scalar(0));
        err = std::abs(xi_error_term(*stream.f_second_at_x, stream.x, stream.x0, n, shift, f, f1));
        r.error_estimate = err;
    }

    const double scale = std::max(std::abs(r.value), 1e-300);
    if (peak > 1e12 * scale) {
        r.diagnostics = Diagnostics::blowup_detected;
        return r;
    }
    // spread of Xi_{n'} over the last ceil(n/10) orders
    const int window = std::max(1, (n + 9) / 10);
    double spread = 0;
    for (int np = std::max(1, n - window + 1); np < n; ++np)
        spread = std::max(spread, std::abs(xi_value(a, np, shift, nullptr) - r.value));
    if (err) {
        r.diagnostics = (spread < 10.0 * std::max(*err, 1e-15 * scale)) ? Diagnostics::converged
                                                                          : Diagnostics::limit_of_schedule;
    } else {
        r.diagnostics = (spread < 1e-3 * scale || spread < 1e-14) ? Diagnostics::plateau
                                                                   : Diagnostics::limit_of_schedule;
        r.error_estimate = spread;
    }
    return r;
}

SummationResult xi_sum(const std::vector<Scalar>& coefficients, int n, int shift) {
    return xi_sum(TaylorStream::from_coefficients(coefficients), n, shift);
}

double optimal_shift(Scalar f, Scalar f_prime, Scalar x, Scalar x0) {
    if (std::abs(f) == 0) throw Error(ErrorKind::singularity, "optimal shift undefined where f(x) = 0");
    return (0.5 - f_prime / f * (x - x0)).real();
}

std::vector<double> default_lindelof_schedule() { return {0.1, 0.05, 0.025}; }

SummationResult lindelof_sum(const std::function<Scalar(int)>& coefficient, const std::vector<double>& schedule,
                             int n_terms) {
    if (schedule.empty()) throw Error(ErrorKind::configuration, "lindelof_sum: empty delta schedule");
    if (n_terms < 1) throw Error(ErrorKind::configuration, "lindelof_sum: need at least one term");
    std::vector<Scalar> a(n_terms);
    for (int j = 0; j < n_terms; ++j) a[j] = coefficient(j);
    std::vector<Scalar> values;
    for (double delta : schedule) {
        if (!(delta > 0)) throw Error(ErrorKind::configuration, "lindelof_sum: delta must be positive");
        Accumulator acc;
        acc += a[0];
        for (int j = 1; j < n_terms; ++j) {
            const double lw = -delta * j * std::log(double(j));
            if (lw < -745) break;
            acc += std::exp(lw) * a[j];
        }
        values.push_back(acc.value());
    }
    SummationResult r;
    r.method = Method::lindelof;
    r.terms_used = n_terms;
    r.value = values.back();
    r.error_estimate = values.size() > 1 ? std::abs(values.back() - values[values.size() - 2]) : 0.0;
    r.diagnostics = Diagnostics::limit_of_schedule;
    return r;
}

namespace {

SummationResult euler_like(const std::function<Scalar(Scalar)>& g, Scalar a, int depth, Scalar w, Scalar lead) {
    if (depth < 1) throw Error(ErrorKind::configuration, "Euler transform: depth must be positive");
    std::vector<Scalar> d(depth);
    for (int j = 0; j < depth; ++j) d[j] = g(a + double(j));
    const Scalar q = 1.0 / (1.0 - w);
    Accumulator acc;
    Scalar wp = q;  // w^p / (1-w)^{p+1}
    Scalar last = 0;
    for (int p = 0; p < depth; ++p) {
        last = wp * d[0];
        acc += last;
        for (int j = 0; j + 1 < depth - p; ++j) d[j] = d[j + 1] - d[j];
        wp *= w * q;
    }
    SummationResult r;
    r.method = Method::euler;
    r.terms_used = depth;
    r.value = lead * acc.value();
    r.error_estimate = std::abs(last);
    r.diagnostics = std::abs(last) <= 1e-12 * std::max(1.0, std::abs(r.value)) ? Diagnostics::converged
                                                                                : Diagnostics::limit_of_schedule;
    return r;
}

}  // namespace

SummationResult euler_transform_sum(const std::function<Scalar(Scalar)>& g, Scalar a, int depth) {
    return euler_like(g, a, depth, -1.0, phase(std::numbers::pi, a));
}

SummationResult euler_transform_sum(const FunctionOracle& g, Scalar a, int depth) {
    return euler_transform_sum([&g](Scalar k) { return g.value(k); }, a, depth);
}

SummationResult euler_transform_phase(const std::function<Scalar(Scalar)>& g, double theta, Scalar a, int depth) {
    const Scalar w = phase(theta, 1.0);
    if (std::abs(1.0 - w) < 1e-14) throw Error(ErrorKind::singularity, "Euler transform: theta = 0 mod 2 pi");
    if (std::abs(w / (1.0 - w)) >= 1.0)
        throw Error(ErrorKind::precondition, "Euler transform: |w/(1-w)| >= 1, transform does not converge");
    return euler_like(g, a, depth, w, phase(theta, a));
}

SequenceMode parse_sequence_mode(const std::string& s) {
    if (s == "hutton2") return SequenceMode::hutton2;
    if (s == "cesaro") return SequenceMode::cesaro;
    if (s == "xi") return SequenceMode::xi;
    throw Error(ErrorKind::configuration, "unknown sequence mode: " + s);
}

SummationResult t_sequence_limit(const std::function<Scalar(int)>& seq, int count, SequenceMode mode) {
    if (count < 2) throw Error(ErrorKind::precondition, "t_sequence_limit needs at least two values");
    std::vector<Scalar> s(count);
    for (int i = 0; i < count; ++i) s[i] = seq(i);
    SummationResult r;
    r.terms_used = count;
    switch (mode) {
        case SequenceMode::hutton2: {
            r.method = Method::cesaro;
            // repeated (s_{j} + s_{j+1})/2 until the tail settles
            std::vector<Scalar> cur = s;
            double spread = 0;
            while (cur.size() >= 2) {
                spread = std::abs(cur[cur.size() - 1] - cur[cur.size() - 2]);
                const double scale = std::max(1.0, std::abs(cur.back()));
                if (spread <= 1e-15 * scale) break;
                std::vector<Scalar> next(cur.size() - 1);
                for (size_t j = 0; j + 1 < cur.size(); ++j) next[j] = 0.5 * (cur[j] + cur[j + 1]);
                cur.swap(next);
                if (cur.size() < size_t(count) / 2) break;
            }
            r.value = cur.back();
            r.error_estimate = cur.size() >= 2 ? std::abs(cur[cur.size() - 1] - cur[cur.size() - 2]) : spread;
            r.diagnostics = *r.error_estimate <= 1e-12 ? Diagnostics::converged : Diagnostics::limit_of_schedule;
            break;
        }
        case SequenceMode::cesaro: {
            r.method = Method::cesaro;
            Accumulator acc, half;
            for (int i = 0; i < count; ++i) acc += s[i];
            for (int i = 0; i < count / 2; ++i) half += s[i];
            r.value = acc.value() / double(count);
            r.error_estimate = std::abs(r.value - half.value() / double(count / 2));
            r.diagnostics = Diagnostics::limit_of_schedule;
            break;
        }
        case SequenceMode::xi: {
            r.method = Method::xi;
            auto avg = [&](int n) {
                Accumulator acc;
                for (int j = 1; j <= n && j < count; ++j) acc += (double(j) / n) * chi(n, j) * s[j];
                return acc.value();
            };
            const int n = count - 1;
            r.value = avg(n);
            r.error_estimate = std::abs(r.value - avg(std::max(1, n / 2)));
            r.diagnostics = Diagnostics::limit_of_schedule;
            break;
        }
    }
    return r;
}

SummationResult hasse_zeta(Scalar s, int outer_terms) {
    if (outer_terms < 1) throw Error(ErrorKind::configuration, "hasse_zeta: need at least one term");
    const Scalar denom = 1.0 - std::pow(Scalar(2.0), 1.0 - s);
    if (std::abs(denom) < 1e-14) throw Error(ErrorKind::singularity, "hasse_zeta: pole at s = 1");
    // sum_j (-1)^j C(k,j) h(j) = (-1)^k Delta^k h(0), h(j) = (j+1)^{-s}
    std::vector<Scalar> d(outer_terms);
    for (int j = 0; j < outer_terms; ++j) d[j] = std::pow(Scalar(j + 1.0), -s);
    Accumulator acc;
    double w = 0.5;
    Scalar last = 0;
    for (int k = 0; k < outer_terms; ++k) {
        last = ((k % 2) ? -w : w) * d[0];
        acc += last;
        for (int j = 0; j + 1 < outer_terms - k; ++j) d[j] = d[j + 1] - d[j];
        w *= 0.5;
    }
    SummationResult r;
    r.method = Method::euler;
    r.terms_used = outer_terms;
    r.value = acc.value() / denom;
    r.error_estimate = std::abs(last / denom);
    r.diagnostics = *r.error_estimate < 1e-12 ? Diagnostics::converged : Diagnostics::limit_of_schedule;
    return r;
}

}  // namespace summa
