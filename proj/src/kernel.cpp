// SPDX-License-Identifier: MIT
#include "summa/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "summa/expression.hpp"

namespace summa {

namespace {

constexpr double kPi = std::numbers::pi;

// B_2 .. B_22
constexpr double kB2k[] = {1.0 / 6,           -1.0 / 30,        1.0 / 42,
                           -1.0 / 30,         5.0 / 66,         -691.0 / 2730,
                           7.0 / 6,           -3617.0 / 510,    43867.0 / 798,
                           -174611.0 / 330,   854513.0 / 138};
constexpr int kNB2k = 11;

void require_jet(const Jet& a, const char* who) {
    if (a.empty()) throw Error(ErrorKind::configuration, std::string(who) + ": empty jet");
}

}  // namespace

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::configuration: return "configuration";
        case ErrorKind::domain: return "domain";
        case ErrorKind::singularity: return "singularity";
        case ErrorKind::numeric: return "numeric";
        case ErrorKind::precondition: return "precondition";
        case ErrorKind::parse: return "parse";
    }
    return "unknown";
}

double factorial(int n) { return std::tgamma(n + 1.0); }

bool is_integer(Scalar x, double tol) {
    return std::abs(x.imag()) <= tol && std::abs(x.real() - std::round(x.real())) <= tol;
}

// ---------------------------------------------------------------- jets

namespace jet {

Jet constant(Scalar c, int R) {
    Jet j(R + 1, 0.0);
    j[0] = c;
    return j;
}

Jet variable(Scalar x, int R) {
    Jet j(R + 1, 0.0);
    j[0] = x;
    if (R >= 1) j[1] = 1.0;
    return j;
}

Jet add(const Jet& a, const Jet& b) {
    Jet r(std::min(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Jet sub(const Jet& a, const Jet& b) {
    Jet r(std::min(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Jet neg(const Jet& a) { return scale(a, -1.0); }

Jet scale(const Jet& a, Scalar c) {
    Jet r(a);
    for (auto& x : r) x *= c;
    return r;
}

Jet mul(const Jet& a, const Jet& b) {
    const size_t n = std::min(a.size(), b.size());
    Jet r(n, 0.0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; i + j < n; ++j) r[i + j] += a[i] * b[j];
    return r;
}

Jet div(const Jet& a, const Jet& b) {
    require_jet(b, "jet::div");
    if (b[0] == Scalar(0)) throw Error(ErrorKind::singularity, "division by a vanishing series");
    const size_t n = std::min(a.size(), b.size());
    Jet q(n, 0.0);
    for (size_t j = 0; j < n; ++j) {
        Scalar s = a[j];
        for (size_t i = 1; i <= j; ++i) s -= b[i] * q[j - i];
        q[j] = s / b[0];
    }
    return q;
}

Jet exp(const Jet& u) {
    require_jet(u, "jet::exp");
    const size_t n = u.size();
    Jet e(n, 0.0);
    e[0] = std::exp(u[0]);
    for (size_t j = 1; j < n; ++j) {
        Scalar s = 0;
        for (size_t i = 1; i <= j; ++i) s += double(i) * u[i] * e[j - i];
        e[j] = s / double(j);
    }
    return e;
}

Jet log(const Jet& u) {
    require_jet(u, "jet::log");
    if (u[0] == Scalar(0)) throw Error(ErrorKind::singularity, "log of zero");
    const size_t n = u.size();
    Jet l(n, 0.0);
    l[0] = std::log(u[0]);
    for (size_t j = 1; j < n; ++j) {
        Scalar s = u[j];
        for (size_t i = 1; i < j; ++i) s -= double(i) / double(j) * l[i] * u[j - i];
        l[j] = s / u[0];
    }
    return l;
}

Jet pow(const Jet& u, Scalar s) {
    require_jet(u, "jet::pow");
    const size_t n = u.size();
    const bool int_exp = s.imag() == 0 && s.real() == std::round(s.real()) && std::abs(s.real()) <= 64;
    if (int_exp) {
        long p = std::lround(s.real());
        Jet base = u;
        if (p < 0) {
            base = div(constant(1.0, int(n) - 1), u);
            p = -p;
        }
        Jet r = constant(1.0, int(n) - 1);
        while (p) {
            if (p & 1) r = mul(r, base);
            base = mul(base, base);
            p >>= 1;
        }
        return r;
    }
    if (u[0] == Scalar(0)) {
        // the value alone is defined for a positive exponent; derivatives are not
        if (n == 1 && s.real() > 0) return Jet{0.0};
        throw Error(ErrorKind::singularity, "non-integer power at zero");
    }
    Jet p(n, 0.0);
    p[0] = std::pow(u[0], s);
    for (size_t j = 1; j < n; ++j) {
        Scalar acc = 0;
        for (size_t i = 1; i <= j; ++i) acc += (s * double(i) - double(j - i)) * u[i] * p[j - i];
        p[j] = acc / (double(j) * u[0]);
    }
    return p;
}

Jet pow(const Jet& u, const Jet& v) {
    bool constant_exp = true;
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] != Scalar(0)) constant_exp = false;
    if (constant_exp) return pow(u, v[0]);
    return exp(mul(v, log(u)));
}

Jet sqrt(const Jet& u) { return pow(u, 0.5); }

namespace {
void sincos(const Jet& u, Jet& s, Jet& c) {
    const size_t n = u.size();
    s.assign(n, 0.0);
    c.assign(n, 0.0);
    s[0] = std::sin(u[0]);
    c[0] = std::cos(u[0]);
    for (size_t j = 1; j < n; ++j) {
        Scalar as = 0, ac = 0;
        for (size_t i = 1; i <= j; ++i) {
            as += double(i) * u[i] * c[j - i];
            ac -= double(i) * u[i] * s[j - i];
        }
        s[j] = as / double(j);
        c[j] = ac / double(j);
    }
}
}  // namespace

Jet sin(const Jet& u) {
    Jet s, c;
    sincos(u, s, c);
    return s;
}

Jet cos(const Jet& u) {
    Jet s, c;
    sincos(u, s, c);
    return c;
}

Jet compose(const std::vector<Scalar>& outer, const Jet& u) {
    require_jet(u, "jet::compose");
    const int R = int(u.size()) - 1;
    Jet d = u;
    d[0] = 0;
    const int M = std::min<int>(R, int(outer.size()) - 1);
    Jet r = constant(M >= 0 ? outer[M] : Scalar(0), R);
    for (int m = M - 1; m >= 0; --m) {
        r = mul(r, d);
        r[0] += outer[m];
    }
    return r;
}

Scalar derivative(const Jet& j, int r) {
    if (r < 0 || r >= int(j.size())) throw Error(ErrorKind::configuration, "jet order too small");
    return j[r] * factorial(r);
}

}  // namespace jet

// ---------------------------------------------------------------- phase

Scalar phase(double theta, Scalar x) {
    const double t = theta / kPi;
    // t x = a + e exactly; fmod is exact, so the reduced angle keeps full precision
    const double a = t * x.real();
    const double e = std::fma(t, x.real(), -a);
    double r = std::fmod(a, 2.0) + e;
    r = std::fmod(r, 2.0);
    if (r < 0) r += 2.0;
    Scalar base;
    if (r == 0.0) base = 1.0;
    else if (r == 0.5) base = Scalar(0, 1);
    else if (r == 1.0) base = -1.0;
    else if (r == 1.5) base = Scalar(0, -1);
    else base = std::polar(1.0, kPi * r);
    if (x.imag() != 0) base *= std::exp(-theta * x.imag());
    return base;
}

// ---------------------------------------------------------------- special functions

namespace {

bool near_pole(Scalar z) {
    return z.real() <= 0 && std::abs(z.imag()) < 1e-14 && std::abs(z.real() - std::round(z.real())) < 1e-14;
}

Scalar lgamma_stirling(Scalar z) {
    Scalar s = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * kPi);
    Scalar z2 = z * z, zp = z;
    for (int k = 1; k <= 8; ++k) {
        s += kB2k[k - 1] / (2.0 * k * (2.0 * k - 1) * zp);
        zp *= z2;
    }
    return s;
}

}  // namespace

Scalar lgamma(Scalar z) {
    if (near_pole(z)) throw Error(ErrorKind::singularity, "lgamma pole");
    if (z.imag() == 0 && z.real() > 0) return std::lgamma(z.real());
    Accumulator shift;
    while (std::abs(z) < 20 || z.real() < 10) {
        shift += std::log(z);
        z += 1.0;
        if (near_pole(z)) throw Error(ErrorKind::singularity, "lgamma pole");
    }
    return lgamma_stirling(z) - shift.value();
}

Scalar polygamma(int m, Scalar z) {
    if (m < 0) throw Error(ErrorKind::configuration, "polygamma order must be nonnegative");
    if (near_pole(z)) throw Error(ErrorKind::singularity, "polygamma pole");
    const double threshold = 20.0 + m;
    const double sgn_m = (m % 2 == 0) ? 1.0 : -1.0;
    const double lfm = std::lgamma(m + 1.0);
    Accumulator shift;
    while (std::abs(z) < threshold || z.real() < threshold / 2) {
        // psi^{(m)}(z) = psi^{(m)}(z+1) - (-1)^m m! / z^{m+1}
        shift += sgn_m * std::exp(lfm - double(m + 1) * std::log(z));
        z += 1.0;
        if (near_pole(z)) throw Error(ErrorKind::singularity, "polygamma pole");
    }
    const Scalar lw = std::log(z);
    Scalar a;
    if (m == 0) {
        a = lw - 0.5 / z;
        Scalar z2 = z * z, zp = z2;
        for (int k = 1; k <= 9; ++k) {
            a -= kB2k[k - 1] / (2.0 * k * zp);
            zp *= z2;
        }
    } else {
        a = std::exp(std::lgamma(double(m)) - double(m) * lw) + 0.5 * std::exp(lfm - double(m + 1) * lw);
        for (int k = 1; k <= 10; ++k) {
            const double lc = std::lgamma(2.0 * k + m) - std::lgamma(2.0 * k + 1);
            Scalar t = kB2k[k - 1] * std::exp(lc - double(2 * k + m) * lw);
            a += t;
            if (std::abs(t) < 1e-18 * std::abs(a)) break;
        }
        a *= (m % 2 == 1) ? 1.0 : -1.0;  // (-1)^{m+1}
    }
    return a - shift.value();
}

Scalar log_barnes_g(Scalar z) {
    if (near_pole(z)) throw Error(ErrorKind::singularity, "Barnes G zero");
    // log G(w+1), w = z - 1; G(w+2) = Gamma(w+1) G(w+1)
    Scalar w = z - 1.0;
    Accumulator shift;
    while (std::abs(w) < 20 || w.real() < 10) {
        shift += lgamma(w + 1.0);
        w += 1.0;
    }
    constexpr double kZetaPrimeMinus1 = -0.16542114370045092921;
    const Scalar lw = std::log(w);
    Scalar s = w * w / 2.0 * lw - 0.75 * w * w + w / 2.0 * std::log(2 * kPi) - lw / 12.0 + kZetaPrimeMinus1;
    Scalar w2 = w * w, wp = w2;
    for (int k = 1; k <= 8; ++k) {
        s += kB2k[k] / (4.0 * k * (k + 1) * wp);
        wp *= w2;
    }
    return s - shift.value();
}

Scalar log_barnes_g_derivative(int r, Scalar z) {
    const Scalar w = z - 1.0;
    if (r == 0) return log_barnes_g(z);
    if (r == 1) return 0.5 * std::log(2 * kPi) - 0.5 - w + w * polygamma(0, w + 1.0);
    Scalar v = double(r - 1) * polygamma(r - 2, w + 1.0) + w * polygamma(r - 1, w + 1.0);
    if (r == 2) v -= 1.0;
    return v;
}

// ---------------------------------------------------------------- oracles

FunctionOracle::FunctionOracle(std::string name, TaylorFn taylor, ValueFn value, ValueFn antiderivative,
                               std::optional<int> asymptotic_order, double domain_start)
    : name_(std::move(name)),
      taylor_(std::move(taylor)),
      value_(std::move(value)),
      anti_(std::move(antiderivative)),
      order_(asymptotic_order),
      domain_start_(domain_start) {}

Scalar FunctionOracle::value(Scalar k) const { return value_ ? value_(k) : taylor_(k, 0)[0]; }

Scalar FunctionOracle::derivative(int r, Scalar k) const {
    if (r == 0) return value(k);
    return jet::derivative(taylor_(k, r), r);
}

Jet FunctionOracle::taylor(Scalar k, int R) const { return taylor_(k, R); }

Scalar FunctionOracle::antiderivative(Scalar k) const {
    if (!anti_) throw Error(ErrorKind::numeric, name_ + ": no closed-form antiderivative");
    return anti_(k);
}

FunctionOracle FunctionOracle::with_order(std::optional<int> m) const {
    FunctionOracle o = *this;
    o.order_ = m;
    return o;
}

FunctionOracle FunctionOracle::with_name(std::string name) const {
    FunctionOracle o = *this;
    o.name_ = std::move(name);
    return o;
}

FunctionOracle FunctionOracle::shifted(Scalar c) const {
    auto t = taylor_;
    auto v = value_;
    auto a = anti_;
    FunctionOracle o(name_ + "(+shift)", [t, c](Scalar k, int R) { return t(k + c, R); },
                     v ? ValueFn([v, c](Scalar k) { return v(k + c); }) : ValueFn{},
                     a ? ValueFn([a, c](Scalar k) { return a(k + c); }) : ValueFn{}, order_,
                     domain_start_ - c.real());
    return o;
}

FunctionOracle FunctionOracle::derived(int r) const {
    if (r == 0) return *this;
    auto t = taylor_;
    auto self = *this;
    std::optional<int> m;
    if (order_) m = std::max(0, *order_ - r);
    ValueFn anti;
    if (r == 1) anti = value_ ? value_ : ValueFn([t](Scalar k) { return t(k, 0)[0]; });
    else anti = [self, r](Scalar k) { return self.derivative(r - 1, k); };
    return FunctionOracle(
        name_ + "^(" + std::to_string(r) + ")",
        [t, r](Scalar k, int R) {
            Jet base = t(k, R + r);
            Jet out(R + 1);
            for (int j = 0; j <= R; ++j) {
                double f = 1;
                for (int i = j + 1; i <= j + r; ++i) f *= i;
                out[j] = base[j + r] * f;
            }
            return out;
        },
        {}, anti, m, domain_start_);
}

BivariateOracle::BivariateOracle(std::string name, TaylorFn in_k, TaylorFn in_n, std::optional<int> order)
    : name_(std::move(name)), in_k_(std::move(in_k)), in_n_(std::move(in_n)), order_(order) {}

Scalar BivariateOracle::value(Scalar k, Scalar n) const { return in_k_(k, n, 0)[0]; }

Scalar BivariateOracle::partial_k(int r, Scalar k, Scalar n) const {
    return jet::derivative(in_k_(k, n, r), r);
}

Scalar BivariateOracle::partial_n(Scalar k, Scalar n) const { return in_n_(k, n, 1)[1]; }

FunctionOracle BivariateOracle::freeze_n(Scalar n) const {
    auto t = in_k_;
    return FunctionOracle(
        name_, [t, n](Scalar k, int R) { return t(k, n, R); }, [t, n](Scalar k) { return t(k, n, 0)[0]; }, {},
        order_);
}

// ---------------------------------------------------------------- builtins

namespace {

Jet poly_jet(const std::vector<Scalar>& c, Scalar k, int R) {
    Jet x = jet::variable(k, R);
    Jet r = jet::constant(0.0, R);
    for (size_t i = c.size(); i-- > 0;) {
        r = jet::mul(r, x);
        r[0] += c[i];
    }
    return r;
}

int degree(const std::vector<Scalar>& c) {
    int d = int(c.size()) - 1;
    while (d > 0 && c[d] == Scalar(0)) --d;
    return d;
}

FunctionOracle power_oracle(double s) {
    const bool nonneg_int = s >= 0 && s == std::floor(s);
    auto taylor = [s, nonneg_int](Scalar k, int R) {
        Jet c(R + 1, 0.0);
        if (k == Scalar(0)) {
            if (!nonneg_int) throw Error(ErrorKind::singularity, "k^s at k = 0");
            if (int(s) <= R) c[int(s)] = 1.0;
            return c;
        }
        c[0] = std::pow(k, s);
        for (int j = 1; j <= R; ++j) c[j] = c[j - 1] * ((s - j + 1) / (double(j) * k));
        return c;
    };
    auto value = [s, nonneg_int](Scalar k) -> Scalar {
        if (k == Scalar(0)) {
            if (s < 0) throw Error(ErrorKind::singularity, "k^s at k = 0");
            return s == 0 ? 1.0 : 0.0;
        }
        if (nonneg_int && s <= 64 && k.imag() == 0) return std::pow(k.real(), s);
        return std::pow(k, s);
    };
    FunctionOracle::ValueFn anti;
    if (s == -1) anti = [](Scalar k) { return std::log(k); };
    else anti = [s](Scalar k) { return (k == Scalar(0) ? Scalar(0) : std::pow(k, s + 1)) / (s + 1); };
    std::optional<int> m = s >= 0 ? int(std::floor(s)) : 0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "k^%.17g", s);
    return FunctionOracle(buf, taylor, value, anti, m, s < 0 || !nonneg_int ? 1e-300 : -1e300);
}

FunctionOracle log_oracle() {
    auto taylor = [](Scalar k, int R) {
        if (k == Scalar(0)) throw Error(ErrorKind::singularity, "log at 0");
        Jet c(R + 1, 0.0);
        c[0] = std::log(k);
        Scalar p = 1.0;
        for (int j = 1; j <= R; ++j) {
            p /= k;
            c[j] = ((j % 2) ? 1.0 : -1.0) * p / double(j);
        }
        return c;
    };
    auto value = [](Scalar k) {
        if (k == Scalar(0)) throw Error(ErrorKind::singularity, "log at 0");
        return std::log(k);
    };
    auto anti = [](Scalar k) { return k == Scalar(0) ? Scalar(0) : k * std::log(k) - k; };
    return FunctionOracle("log(k)", taylor, value, anti, 0, 1e-300);
}

FunctionOracle log_factorial_oracle(int level) {
    if (level == 1) {
        auto taylor = [](Scalar k, int R) {
            Jet c(R + 1, 0.0);
            c[0] = lgamma(k + 1.0);
            for (int j = 1; j <= R; ++j) c[j] = polygamma(j - 1, k + 1.0) / factorial(j);
            return c;
        };
        return FunctionOracle("logfact(k)", taylor, [](Scalar k) { return lgamma(k + 1.0); }, {}, 1, -1.0 + 1e-12);
    }
    if (level == 2) {
        auto taylor = [](Scalar k, int R) {
            Jet c(R + 1, 0.0);
            for (int j = 0; j <= R; ++j) c[j] = log_barnes_g_derivative(j, k + 2.0) / factorial(j);
            return c;
        };
        return FunctionOracle("logG(k+2)", taylor, [](Scalar k) { return log_barnes_g(k + 2.0); }, {}, 2,
                              -2.0 + 1e-12);
    }
    throw Error(ErrorKind::configuration, "log_factorial_term level must be 1 or 2");
}

FunctionOracle composite_oracle(const std::string& text, std::optional<int> order) {
    Expr e = Expr::parse(text);
    if (e.depends_on('n'))
        throw Error(ErrorKind::configuration, "custom-composite: use a bivariate oracle for expressions in n");
    return FunctionOracle(
        e.print(), [e](Scalar k, int R) { return e.eval(k, 0.0, R, 'k'); },
        [e](Scalar k) { return e.value(k, 0.0); }, {}, order, -1e300);
}

}  // namespace

BuiltinKind parse_builtin_kind(const std::string& name) {
    if (name == "power_s") return BuiltinKind::power_s;
    if (name == "log") return BuiltinKind::log;
    if (name == "log_factorial_term") return BuiltinKind::log_factorial_term;
    if (name == "exp_i_theta_times") return BuiltinKind::exp_i_theta_times;
    if (name == "rational") return BuiltinKind::rational;
    if (name == "polynomial") return BuiltinKind::polynomial;
    if (name == "custom-composite" || name == "custom_composite") return BuiltinKind::custom_composite;
    throw Error(ErrorKind::configuration, "unsupported oracle kind: " + name);
}

FunctionOracle builtin_oracle(BuiltinKind kind, const BuiltinParams& p) {
    FunctionOracle o;
    switch (kind) {
        case BuiltinKind::power_s: o = power_oracle(p.s); break;
        case BuiltinKind::log: o = log_oracle(); break;
        case BuiltinKind::log_factorial_term: o = log_factorial_oracle(p.level); break;
        case BuiltinKind::exp_i_theta_times: {
            if (!p.inner) throw Error(ErrorKind::configuration, "exp_i_theta_times needs an inner oracle");
            FunctionOracle inner = *p.inner;
            const double th = p.theta;
            auto taylor = [inner, th](Scalar k, int R) {
                Jet e(R + 1);
                e[0] = phase(th, k);
                for (int j = 1; j <= R; ++j) e[j] = e[j - 1] * Scalar(0, th) / double(j);
                return jet::mul(e, inner.taylor(k, R));
            };
            auto value = [inner, th](Scalar k) { return phase(th, k) * inner.value(k); };
            o = FunctionOracle("e^{i" + std::to_string(th) + "k}*" + inner.name(), taylor, value, {},
                               inner.asymptotic_order(), inner.domain_start());
            break;
        }
        case BuiltinKind::rational: {
            if (p.numerator.empty() || p.denominator.empty())
                throw Error(ErrorKind::configuration, "rational needs numerator and denominator");
            auto num = p.numerator, den = p.denominator;
            auto taylor = [num, den](Scalar k, int R) { return jet::div(poly_jet(num, k, R), poly_jet(den, k, R)); };
            int m = std::max(0, degree(num) - degree(den));
            o = FunctionOracle("rational", taylor, {}, {}, m, -1e300);
            break;
        }
        case BuiltinKind::polynomial: {
            if (p.numerator.empty()) throw Error(ErrorKind::configuration, "polynomial needs coefficients");
            auto c = p.numerator;
            std::vector<Scalar> ci(c.size() + 1, 0.0);
            for (size_t i = 0; i < c.size(); ++i) ci[i + 1] = c[i] / double(i + 1);
            o = FunctionOracle(
                "polynomial", [c](Scalar k, int R) { return poly_jet(c, k, R); },
                [c](Scalar k) { return poly_jet(c, k, 0)[0]; }, [ci](Scalar k) { return poly_jet(ci, k, 0)[0]; },
                degree(c), -1e300);
            break;
        }
        case BuiltinKind::custom_composite: o = composite_oracle(p.expression, p.asymptotic_order); break;
        default: throw Error(ErrorKind::configuration, "unsupported oracle kind");
    }
    if (p.asymptotic_order) o = o.with_order(p.asymptotic_order);
    return o;
}

// ---------------------------------------------------------------- finite-difference fallback

namespace {

Scalar central_difference(const std::function<Scalar(Scalar)>& f, int r, Scalar k, double h) {
    Accumulator acc;
    double binom = 1;
    for (int j = 0; j <= r; ++j) {
        const double sgn = (j % 2) ? -1.0 : 1.0;
        acc += sgn * binom * f(k + (0.5 * r - j) * h);
        binom = binom * (r - j) / (j + 1);
    }
    return acc.value() / std::pow(h, r);
}

}  // namespace

Scalar fd_fallback_derivative(const std::function<Scalar(Scalar)>& f, int r, Scalar k, double h,
                              double domain_start) {
    if (r < 0 || r > 6) throw Error(ErrorKind::configuration, "finite-difference fallback supports r <= 6");
    if (!(h > 0)) throw Error(ErrorKind::configuration, "step must be positive");
    if (r == 0) return f(k);
    if (k.real() - 0.5 * r * h < domain_start)
        throw Error(ErrorKind::domain, "finite-difference stencil leaves the domain");
    const Scalar coarse = central_difference(f, r, k, h);
    const Scalar fine = central_difference(f, r, k, h / 2);
    return (4.0 * fine - coarse) / 3.0;
}

FunctionOracle oracle_from_values(std::string name, std::function<Scalar(Scalar)> f, double h,
                                  double domain_start) {
    auto taylor = [f, h, domain_start](Scalar k, int R) {
        if (R > 6) throw Error(ErrorKind::configuration, "finite-difference oracle supports derivatives up to 6");
        Jet c(R + 1);
        c[0] = f(k);
        for (int j = 1; j <= R; ++j) c[j] = fd_fallback_derivative(f, j, k, h, domain_start) / factorial(j);
        return c;
    };
    return FunctionOracle(std::move(name), taylor, f, {}, {}, domain_start);
}

// ---------------------------------------------------------------- accumulation

void Accumulator::add(Scalar x) {
    auto step = [](double& sum, double& c, double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) c += (sum - t) + v;
        else c += (v - t) + sum;
        sum = t;
    };
    step(sum_re_, c_re_, x.real());
    step(sum_im_, c_im_, x.imag());
}

Scalar compensated_sum(const std::vector<Scalar>& terms) {
    Accumulator acc;
    for (const auto& t : terms) acc += t;
    return acc.value();
}

}  // namespace summa
