#include "summa/findiff.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "summa/constants.hpp"

namespace summa {

namespace {

bool zero_angle(double theta) { return std::abs(std::remainder(theta, 2 * std::numbers::pi)) < 1e-14; }

std::vector<Scalar> differences_at(const std::function<Scalar(Scalar)>& f, Scalar x, int R) {
    std::vector<Scalar> v(R + 1);
    for (int j = 0; j <= R; ++j) v[j] = f(x + double(j));
    std::vector<Scalar> out(R + 1);
    for (int j = 0; j <= R; ++j) {
        out[j] = v[0];
        for (int i = 0; i + 1 < int(v.size()) - j; ++i) v[i] = v[i + 1] - v[i];
    }
    return out;
}

// Gregory coefficients beyond the default table, for the long identity series.
const ConstantTables& wide_tables() {
    static const ConstantTables t(128);
    return t;
}

}  // namespace

SampleGrid SampleGrid::sample(const std::function<Scalar(Scalar)>& f, Scalar x0, double h, int J) {
    SampleGrid g;
    g.x0 = x0;
    g.h = h;
    g.values.resize(std::max(J, 0) + 1);
    for (int j = 0; j <= J; ++j) g.values[j] = f(x0 + double(j) * h);
    g.validate();
    return g;
}

void SampleGrid::validate() const {
    if (!(h > 0) || !std::isfinite(h)) throw Error(ErrorKind::configuration, "sample step must be positive");
    if (values.size() < 2) throw Error(ErrorKind::precondition, "a sample grid needs at least two values");
}

DifferenceTable forward_differences(const SampleGrid& grid) {
    grid.validate();
    DifferenceTable t;
    t.rows.push_back(grid.values);
    while (t.rows.back().size() > 1) {
        const auto& prev = t.rows.back();
        std::vector<Scalar> next(prev.size() - 1);
        for (std::size_t i = 0; i < next.size(); ++i) next[i] = prev[i + 1] - prev[i];
        t.rows.push_back(std::move(next));
    }
    return t;
}

const std::vector<double>& log_power_coefficients(int r, int J) {
    if (r < 0 || J < 0) throw Error(ErrorKind::configuration, "negative order");
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<double>> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find({r, J}); it != cache.end()) return it->second;
    std::vector<double> L(J + 1, 0.0);
    for (int j = 1; j <= J; ++j) L[j] = (j % 2 ? 1.0 : -1.0) / j;
    std::vector<double> p(J + 1, 0.0);
    p[0] = 1;
    for (int q = 0; q < r; ++q) {
        std::vector<double> next(J + 1, 0.0);
        for (int i = 0; i <= J; ++i) {
            if (p[i] == 0) continue;
            for (int j = 1; i + j <= J; ++j) next[i + j] += p[i] * L[j];
        }
        p = std::move(next);
    }
    return cache.emplace(std::pair{r, J}, std::move(p)).first->second;
}

Regularize parse_regularize(const std::string& s) {
    if (s == "truncate") return Regularize::truncate;
    if (s == "xi") return Regularize::xi;
    if (s == "xi_extrapolated" || s == "xi-extrapolated") return Regularize::xi_extrapolated;
    throw Error(ErrorKind::parse, "unknown regularization '" + s + "'");
}

const char* to_string(Regularize r) {
    switch (r) {
        case Regularize::truncate: return "truncate";
        case Regularize::xi: return "xi";
        case Regularize::xi_extrapolated: return "xi_extrapolated";
    }
    return "?";
}

namespace {

int capped_order(int J, const SampleGrid& grid, FdResult& out) {
    if (J > kMaxDifferenceOrder) {
        out.capped = true;
        out.warnings.push_back("difference order capped at " + std::to_string(kMaxDifferenceOrder));
        J = kMaxDifferenceOrder;
    }
    if (J > grid.order())
        throw Error(ErrorKind::precondition, "grid holds " + std::to_string(grid.order()) +
                                                 " differences, " + std::to_string(J) + " requested");
    return J;
}

Scalar log_series(const DifferenceTable& t, int r, int J, bool weighted) {
    const auto& c = log_power_coefficients(r, J);
    Accumulator acc;
    for (int j = r; j <= J; ++j) acc += (weighted ? chi(J, j) : 1.0) * c[j] * t.at_x0(j);
    return acc.value();
}

}  // namespace

FdResult fd_derivative(const SampleGrid& grid, int r, int J, Regularize regularize, std::optional<double> bandwidth) {
    if (r < 1) throw Error(ErrorKind::configuration, "derivative order must be positive");
    FdResult out;
    J = capped_order(J, grid, out);
    if (J < r) throw Error(ErrorKind::precondition, "difference order below derivative order");
    if (bandwidth && *bandwidth > 0 && grid.h >= 1.0 / (2.0 * *bandwidth))
        out.warnings.push_back("undersampled: step h >= 1/(2B), the result reflects an aliased function");
    const auto t = forward_differences(grid);
    Scalar v;
    switch (regularize) {
        case Regularize::truncate: v = log_series(t, r, J, false); break;
        case Regularize::xi: v = log_series(t, r, J, true); break;
        case Regularize::xi_extrapolated:
            if (J / 2 < r) throw Error(ErrorKind::precondition, "order too low to extrapolate");
            v = 2.0 * log_series(t, r, J, true) - log_series(t, r, J / 2, true);
            break;
    }
    out.value = v / std::pow(grid.h, r);
    out.order_used = J;
    return out;
}

FdResult newton_interpolate(const SampleGrid& grid, Scalar x, int J) {
    FdResult out;
    J = capped_order(J, grid, out);
    const auto tab = forward_differences(grid);
    const Scalar t = (x - grid.x0) / grid.h;
    Accumulator acc;
    Scalar c = 1;  // C(t, j)
    for (int j = 0; j <= J; ++j) {
        acc += c * tab.at_x0(j);
        c *= (t - double(j)) / double(j + 1);
    }
    out.value = acc.value();
    out.order_used = J;
    return out;
}

std::optional<std::string> midpoint_alias_check(const std::function<Scalar(Scalar)>& f, const SampleGrid& grid, int J) {
    J = std::min(J, grid.order());
    if (J < 3) return std::nullopt;
    // cubic through samples i..i+3 at the centre of the middle interval: weights (-1, 9, 9, -1)/16
    double scale = 0, worst = 0;
    for (const auto& v : grid.values) scale = std::max(scale, std::abs(v));
    for (int i = 0; i + 3 <= J && i < 4; ++i) {
        const auto& y = grid.values;
        const Scalar cubic = (-y[i] + 9.0 * y[i + 1] + 9.0 * y[i + 2] - y[i + 3]) / 16.0;
        const Scalar fx = f(grid.x0 + (i + 1.5) * grid.h);
        scale = std::max(scale, std::abs(fx));
        worst = std::max(worst, std::abs(cubic - fx));
    }
    if (worst > 0.2 * std::max(scale, 1e-300))
        return "undersampled: f differs from the local cubic between samples by " + std::to_string(worst) +
               ", the result reflects an aliased function";
    return std::nullopt;
}

SeriesValue gregory_sum(const FunctionOracle& g, Scalar a, Scalar n, int max_order, double shift_to) {
    const int R = std::clamp(max_order, 2, kMaxDifferenceOrder);
    const double low = std::min(a.real(), n.real() + 1.0);
    const long K = low < shift_to ? long(std::ceil(shift_to - low)) : 0;
    Accumulator acc;
    for (long i = 0; i < K; ++i) acc += g.value(a + double(i)) - g.value(n + 1.0 + double(i));
    const Scalar A = a + double(K), B = n + double(K);
    auto f = [&](Scalar x) { return g.value(x); };
    const auto dA = differences_at(f, A, R), dB = differences_at(f, B, R);
    acc += integrate(g, A, B) + 0.5 * (dA[0] + dB[0]);

    const auto& tab = ConstantTables::instance();
    std::vector<Scalar> terms;
    for (int r = 2; r <= R; ++r) terms.push_back(-tab.gregory(r) * (dB[r - 1] - dA[r - 1]));
    std::size_t stop = 0;
    for (std::size_t i = 1; i < terms.size(); ++i)
        if (std::abs(terms[i]) < std::abs(terms[stop])) stop = i;
    SeriesValue out;
    for (std::size_t i = 0; i < stop; ++i) acc += terms[i];
    out.value = acc.value();
    out.terms_used = int(stop);
    out.error_estimate = terms.empty() ? 0.0 : std::abs(terms[stop]);
    return out;
}

Scalar gregory_unit_interval(const FunctionOracle& g, Scalar a, int R) {
    const ConstantTables& tab = R < ConstantTables::kDefaultBound ? ConstantTables::instance() : wide_tables();
    if (R >= tab.bound()) throw Error(ErrorKind::configuration, "Gregory order beyond the constant tables");
    const auto d = differences_at([&](Scalar x) { return g.value(x); }, a - 1.0, R);
    Accumulator acc;
    acc += 0.5 * (g.value(a) + d[0]);
    for (int r = 2; r <= R; ++r) acc += tab.gregory(r) * d[r];
    return acc.value();
}

SummationResult discrete_osc_eval(const FunctionOracle& g, double theta, Scalar a, Scalar n, int m,
                                  const EvalConfig& cfg) {
    cfg.validate();
    if (m < 0 || m > kMaxDifferenceOrder) throw Error(ErrorKind::configuration, "difference order out of range");
    const bool plain = zero_angle(theta);
    auto weight = [&](int r) {
        const Scalar w = plain ? falling_poly_d(r, n) - falling_poly_d(r, a - 1.0)
                               : upsilon_r(theta, r, n) - upsilon_r(theta, r, a - 1.0);
        return w / factorial(r);
    };
    auto f = [&](Scalar x) { return g.value(x); };
    auto ph = [&](Scalar x) { return plain ? Scalar(1) : phase(theta, x); };
    if (cfg.auto_order) {
        const int cap = std::min(m + 8, kMaxDifferenceOrder);
        const auto d = differences_at(f, double(cfg.s_horizon), cap);
        while (m < cap && std::abs(weight(m + 1) * d[m + 1]) > cfg.tolerance) ++m;
    }
    std::vector<Scalar> w(m + 1);
    for (int r = 0; r <= m; ++r) w[r] = weight(r);
    auto term = [&](long k) {
        const Scalar x = a + double(k), y = n + double(k) + 1.0;
        return ph(x) * g.value(x) - ph(y) * g.value(y);
    };
    auto correction = [&](long s) {
        const auto d = differences_at(f, double(s), m);
        Scalar t = 0;
        for (int r = 0; r <= m; ++r) t += w[r] * d[r];
        return ph(double(s)) * t;
    };
    return horizon_sequence_limit(term, correction, cfg);
}

SummationResult discrete_osc_tvalue(const FunctionOracle& g, double theta, long a, int m, long n) {
    if (n < a) throw Error(ErrorKind::precondition, "upper limit below the lower limit");
    if (m < 0 || m > kMaxDifferenceOrder) throw Error(ErrorKind::configuration, "difference order out of range");
    std::vector<Scalar> phis(m + 1);
    for (int r = 0; r <= m; ++r) phis[r] = phi_r(theta, r) / factorial(r);
    auto value_at = [&](long upto) {
        Accumulator acc;
        for (long k = a; k <= upto; ++k) acc += phase(theta, double(k)) * g.value(double(k));
        const auto d = differences_at([&](Scalar x) { return g.value(x); }, double(upto), m);
        Scalar tail = 0;
        for (int r = 0; r <= m; ++r) tail += phis[r] * d[r];
        acc += phase(theta, double(upto)) * tail;
        return acc.value();
    };
    SummationResult out;
    out.method = Method::direct;
    out.value = value_at(n);
    out.terms_used = int(n - a + 1);
    out.error_estimate = std::abs(out.value - value_at(a + (n - a) / 2));
    out.diagnostics = Diagnostics::converged;
    return out;
}

namespace {

struct Series {
    double target;
    int default_terms;
    std::function<double(int)> term;  // term index 1..
    bool product = false;             // partial values are exp of the partial sums
};

double abs_gregory(int r) { return std::abs(wide_tables().gregory(r)); }

double sign6(const int (&p)[6], int r) { return p[(r - 1) % 6]; }

// Delta^k f(x) for k = 0..K, from exact integer-spaced samples.
std::vector<double> real_differences(const std::function<double(double)>& f, double x, int K) {
    const auto d = differences_at([&](Scalar t) { return Scalar(f(t.real())); }, x, K);
    std::vector<double> out(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i].real();
    return out;
}

const std::map<std::string, Series>& catalog() {
    using std::numbers::egamma;
    using std::numbers::pi;
    static const std::map<std::string, Series> c = [] {
        std::map<std::string, Series> m;
        m["kluyver"] = {egamma, 100, [](int r) { return abs_gregory(r) / r; }};
        m["gregory_unit"] = {1 - std::log(2.0), 50, [](int r) { return abs_gregory(r) / (r + 1); }};
        m["gregory_shifted"] = {(std::log(2 * pi) - 1 - egamma) / 2, 100,
                                [](int r) { return abs_gregory(r + 1) / r; }};
        static const int pa[6] = {1, 1, 0, -1, -1, 0}, pb[6] = {0, 1, 1, 0, -1, -1}, pc[6] = {1, 0, -1, -1, 0, 1};
        m["sqrt3_over_pi"] = {std::sqrt(3.0) / pi, 40, [](int r) { return sign6(pa, r) * abs_gregory(r); }};
        m["two_sqrt3_over_pi_minus_1"] = {2 * std::sqrt(3.0) / pi - 1, 40,
                                          [](int r) { return sign6(pb, r) * abs_gregory(r); }};
        m["one_minus_sqrt3_over_pi"] = {1 - std::sqrt(3.0) / pi, 40,
                                        [](int r) { return sign6(pc, r) * abs_gregory(r); }};
        static const auto dlog = real_differences([](double x) { return std::log(x); }, 1.0, kMaxDifferenceOrder);
        static const auto dq = real_differences([](double x) { return std::log((4 * x - 1) / (4 * x - 3)); }, 1.0,
                                                kMaxDifferenceOrder);
        auto alt = [](int k) { return k % 2 ? 1.0 : -1.0; };
        m["e_product"] = {std::numbers::e, 30, [alt](int k) { return alt(k) * dlog[k] / k; }, true};
        m["ser_product"] = {std::exp(egamma), 12, [alt](int k) { return alt(k) * dlog[k] / (k + 1); }, true};
        m["e_pi_product"] = {std::exp(pi), 30, [alt](int k) { return alt(k) * dq[k - 1] / k; }, true};
        return m;
    }();
    return c;
}

}  // namespace

IdentityCheck identity_constant(const std::string& name, int terms) {
    const auto& cat = catalog();
    const auto it = cat.find(name);
    if (it == cat.end()) throw Error(ErrorKind::configuration, "unknown identity '" + name + "'");
    const Series& s = it->second;
    if (terms <= 0) terms = s.default_terms;
    const int limit = s.product ? kMaxDifferenceOrder : wide_tables().bound() - 2;
    if (terms > limit) throw Error(ErrorKind::configuration, "identity '" + name + "' limited to " +
                                                                 std::to_string(limit) + " terms");
    IdentityCheck out;
    out.name = name;
    out.target = s.target;
    out.terms = terms;
    Accumulator acc;
    bool up = true, down = true, below = true, above = true;
    double prev = 0;
    for (int k = 1; k <= terms; ++k) {
        acc += s.term(k);
        const double v = s.product ? std::exp(acc.value().real()) : acc.value().real();
        if (k > 1) {
            up = up && v >= prev;
            down = down && v <= prev;
        }
        below = below && v < s.target;
        above = above && v > s.target;
        prev = v;
    }
    out.partial = prev;
    out.error = prev - s.target;
    out.monotone = up || down;
    out.bracketed = below || above;
    return out;
}

std::vector<IdentityCheck> identity_constants() {
    std::vector<IdentityCheck> out;
    for (const auto& [name, s] : catalog()) out.push_back(identity_constant(name, s.default_terms));
    return out;
}

}  // namespace summa
