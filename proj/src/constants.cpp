#include "summa/constants.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>

namespace summa {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

double to_double(const cpp_rational& q) { return q.convert_to<double>(); }

std::string to_str(const cpp_rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

std::vector<std::vector<cpp_int>> binomial_table(int n) {
    std::vector<std::vector<cpp_int>> c(n + 1);
    for (int i = 0; i <= n; ++i) {
        c[i].assign(i + 1, 1);
        for (int j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
    }
    return c;
}

// B_m = 1 - sum_{r<m} C(m,r) B_r / (m-r+1); this yields B_1 = +1/2.
std::vector<cpp_rational> bernoulli_plus(int n, const std::vector<std::vector<cpp_int>>& C) {
    std::vector<cpp_rational> b(n + 1);
    b[0] = 1;
    for (int m = 1; m <= n; ++m) {
        cpp_rational s = 1;
        for (int r = 0; r < m; ++r) s -= cpp_rational(C[m][r]) * b[r] / (m - r + 1);
        b[m] = s;
    }
    return b;
}

}  // namespace

ConstantTables::ConstantTables(int bound) : bound_(bound) {
    if (bound < 2) throw Error(ErrorKind::configuration, "constant table bound must be at least 2");
    const int n = bound + 1;
    const auto C = binomial_table(n + 1);
    auto bp = bernoulli_plus(n + 1, C);

    bernoulli_.resize(n);
    b_str_.resize(n);
    for (int r = 0; r < n; ++r) {
        cpp_rational v = r == 1 ? cpp_rational(-1, 2) : bp[r];
        bernoulli_[r] = to_double(v);
        b_str_[r] = to_str(v);
    }

    // N_0 = 1/2, N_r = 1/4 - (1/2) sum_{k=1}^{r-1} C(r,k) N_k
    std::vector<cpp_rational> na(n);
    na[0] = cpp_rational(1, 2);
    for (int r = 1; r < n; ++r) {
        cpp_rational s(1, 4);
        for (int k = 1; k < r; ++k) s -= cpp_rational(C[r][k]) * na[k] / 2;
        na[r] = s;
    }
    n_alt_.resize(n);
    n_str_.resize(n);
    for (int r = 0; r < n; ++r) {
        n_alt_[r] = to_double(na[r]);
        n_str_[r] = to_str(na[r]);
    }

    // G_0 = 1, G_m = (-1)^{m+1}/(m+1) - sum_{k=1}^{m-1} (-1)^k G_{m-k}/(k+1)
    std::vector<cpp_rational> g(n);
    g[0] = 1;
    for (int m = 1; m < n; ++m) {
        cpp_rational s((m % 2) ? 1 : -1, m + 1);
        for (int k = 1; k < m; ++k) s -= cpp_rational((k % 2) ? -1 : 1, k + 1) * g[m - k];
        g[m] = s;
    }
    gregory_.resize(n);
    g_str_.resize(n);
    for (int r = 0; r < n; ++r) {
        gregory_[r] = to_double(g[r]);
        g_str_[r] = to_str(g[r]);
    }

    std::vector<std::vector<cpp_int>> s1(n), s2(n);
    for (int r = 0; r < n; ++r) {
        s1[r].assign(r + 1, 0);
        s2[r].assign(r + 1, 0);
    }
    s1[0][0] = 1;
    s2[0][0] = 1;
    for (int r = 0; r + 1 < n; ++r) {
        for (int k = 1; k <= r + 1; ++k) {
            cpp_int a1 = k <= r ? s1[r][k] : cpp_int(0);
            cpp_int a2 = k <= r ? s2[r][k] : cpp_int(0);
            s1[r + 1][k] = s1[r][k - 1] - cpp_int(r) * a1;
            s2[r + 1][k] = s2[r][k - 1] + cpp_int(k) * a2;
        }
    }
    s1_.resize(n);
    s2_.resize(n);
    s2f_.resize(n);
    for (int r = 0; r < n; ++r) {
        s1_[r].resize(r + 1);
        s2_[r].resize(r + 1);
        s2f_[r].resize(r + 1);
        cpp_int f = 1;
        for (int k = 0; k <= r; ++k) {
            if (k > 0) f *= k;
            s1_[r][k] = s1[r][k].convert_to<double>();
            s2_[r][k] = s2[r][k].convert_to<double>();
            s2f_[r][k] = cpp_int(s2[r][k] * f).convert_to<double>();
        }
    }
}

const ConstantTables& ConstantTables::instance() {
    static const ConstantTables tables(kDefaultBound);
    return tables;
}

void ConstantTables::check(int r) const {
    if (r < 0 || r > bound_)
        throw Error(ErrorKind::configuration,
                    "index " + std::to_string(r) + " beyond constant table bound " + std::to_string(bound_));
}

double ConstantTables::bernoulli(int r, BernoulliConvention c) const {
    check(r);
    if (r == 1 && c == BernoulliConvention::plus_half) return 0.5;
    return bernoulli_[r];
}

std::string ConstantTables::bernoulli_string(int r, BernoulliConvention c) const {
    check(r);
    if (r == 1 && c == BernoulliConvention::plus_half) return "1/2";
    return b_str_[r];
}

double ConstantTables::n_alt(int r) const {
    check(r);
    return n_alt_[r];
}

std::string ConstantTables::n_alt_string(int r) const {
    check(r);
    return n_str_[r];
}

double ConstantTables::gregory(int r) const {
    check(r);
    return gregory_[r];
}

std::string ConstantTables::gregory_string(int r) const {
    check(r);
    return g_str_[r];
}

double ConstantTables::stirling(StirlingKind kind, int r, int k) const {
    check(r);
    if (k < 0) throw Error(ErrorKind::configuration, "negative Stirling index");
    if (k > r) return 0.0;
    return kind == StirlingKind::first ? s1_[r][k] : s2_[r][k];
}

double ConstantTables::stirling2_times_factorial(int r, int k) const {
    check(r);
    if (k < 0 || k > r) return 0.0;
    return s2f_[r][k];
}

const std::vector<Scalar>& ConstantTables::theta_table(double theta) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = theta_cache_.find(theta);
    if (it != theta_cache_.end()) return it->second;
    const Scalar w = phase(theta, 1.0);
    const Scalar d = 1.0 - w;
    if (std::abs(d) < 1e-14) throw Error(ErrorKind::singularity, "Theta_r is singular at theta = 0 mod 2 pi");
    std::vector<Scalar> t(bound_ + 1);
    const Scalar q = w / d;
    t[0] = q;
    for (int r = 1; r <= bound_; ++r) {
        // sum_{k=1}^r S(r,k) k! w^k / (1-w)^{k+1}
        Scalar s = 0, p = q / d;
        for (int k = 1; k <= r; ++k) {
            s += s2f_[r][k] * p;
            p *= q;
        }
        t[r] = s;
    }
    return theta_cache_.emplace(theta, std::move(t)).first->second;
}

// ---------------------------------------------------------------- free functions

double bernoulli(int r, BernoulliConvention c) { return ConstantTables::instance().bernoulli(r, c); }
double n_alt(int r) { return ConstantTables::instance().n_alt(r); }
double gregory(int r) { return ConstantTables::instance().gregory(r); }
double stirling(StirlingKind kind, int r, int k) { return ConstantTables::instance().stirling(kind, r, k); }

double bernoulli_closed_form(int s) {
    if (s < 0 || s > ConstantTables::instance().bound())
        throw Error(ErrorKind::configuration, "closed-form Bernoulli index out of range");
    if (s == 0) return 1.0;
    const auto C = binomial_table(s);
    cpp_rational total = 0;
    for (int k = 0; k < s; ++k) {
        cpp_int inner = 0;
        for (int j = 0; j <= k; ++j) {
            cpp_int p = (s == 1) ? cpp_int(1) : boost::multiprecision::pow(cpp_int(j), s - 1);
            inner += (j % 2 ? -1 : 1) * C[k][j] * p;
        }
        total += cpp_rational(inner, cpp_int(1) << (k + 1));
    }
    cpp_rational factor(s, cpp_int(1) - (cpp_int(1) << s));
    return to_double(factor * total);
}

double n_alt_from_bernoulli(int r) {
    const auto C = binomial_table(r + 2);
    auto bp = bernoulli_plus(r + 1, C);
    cpp_rational v = bp[r + 1] * cpp_rational((cpp_int(1) << (r + 1)) - 1, r + 1);
    return to_double(v);
}

Scalar theta_r(double theta, int r) {
    const auto& t = ConstantTables::instance();
    if (r < 0 || r > t.bound()) throw Error(ErrorKind::configuration, "Theta_r index out of range");
    return t.theta_table(theta)[r];
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double b = 1;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return std::round(b);
}

Scalar falling_factorial(Scalar x, int m) {
    Scalar p = 1.0;
    for (int i = 0; i < m; ++i) p *= x - double(i);
    return p;
}

Scalar faulhaber_b(int r, Scalar n) {
    // sum_{k=1}^N k^r = 1/(r+1) sum_j C(r+1,j) B_j^+ N^{r+1-j}, N = n + 1
    const Scalar N = n + 1.0;
    const auto& t = ConstantTables::instance();
    Scalar s = 0, p = 1.0;
    std::vector<Scalar> pw(r + 2);
    for (int e = 0; e <= r + 1; ++e) {
        pw[e] = p;
        p *= N;
    }
    for (int j = 0; j <= r; ++j) s += binomial(r + 1, j) * t.bernoulli(j, BernoulliConvention::plus_half) * pw[r + 1 - j];
    return s / double(r + 1);
}

Scalar omega_r(double theta, int r, Scalar n) {
    const auto& t = ConstantTables::instance().theta_table(theta);
    if (r < 0 || r >= int(t.size())) throw Error(ErrorKind::configuration, "Omega_r index out of range");
    const Scalar x = n + 1.0;
    Scalar s = 0;
    Scalar p = 1.0;
    // sum_m C(r,m) Theta_m x^{r-m}, m from r down to 0
    for (int m = r; m >= 0; --m) {
        s += binomial(r, m) * t[m] * p;
        p *= x;
    }
    return t[r] - phase(theta, x) * s;
}

// sum_{k=0}^{n+1} (k)_r = (n+2)_{r+1} / (r+1); the k = 0 term is 1 only for r = 0.
Scalar falling_poly_d(int r, Scalar n) { return falling_factorial(n + 2.0, r + 1) / double(r + 1) - (r == 0 ? 1.0 : 0.0); }

Scalar upsilon_r(double theta, int r, Scalar n) {
    Scalar s = 0;
    for (int k = 0; k <= r; ++k) s += stirling(StirlingKind::first, r, k) * omega_r(theta, k, n);
    return s;
}

Scalar phi_r(double theta, int r) {
    Scalar s = 0;
    for (int k = 0; k <= r; ++k) s += stirling(StirlingKind::first, r, k) * theta_r(theta, k);
    return s;
}

}  // namespace summa
