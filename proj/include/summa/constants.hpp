// Bernoulli, alternating-Bernoulli (N_r), Gregory and Stirling tables, plus the
// oscillating constants Theta_r and the polynomial families built on them.
//
// Tables are generated once in exact rational arithmetic and rounded to binary64.

#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "summa/kernel.hpp"

namespace summa {

enum class BernoulliConvention { minus_half, plus_half };
enum class StirlingKind { first, second };

class ConstantTables {
public:
    static constexpr int kDefaultBound = 64;

    explicit ConstantTables(int bound = kDefaultBound);
    static const ConstantTables& instance();

    int bound() const { return bound_; }

    double bernoulli(int r, BernoulliConvention c = BernoulliConvention::minus_half) const;
    double n_alt(int r) const;
    double gregory(int r) const;
    /// Signed s(r,k) for kind=first, S(r,k) for kind=second. Zero when k > r.
    double stirling(StirlingKind kind, int r, int k) const;
    /// S(r,k) k!, used by Theta_r.
    double stirling2_times_factorial(int r, int k) const;
    /// Exact value as "p/q".
    std::string bernoulli_string(int r, BernoulliConvention c = BernoulliConvention::minus_half) const;
    std::string n_alt_string(int r) const;
    std::string gregory_string(int r) const;

    /// Theta_0..Theta_max(theta), memoized per theta.
    const std::vector<Scalar>& theta_table(double theta) const;

private:
    void check(int r) const;

    int bound_;
    std::vector<double> bernoulli_;  // canonical B_1 = -1/2
    std::vector<double> n_alt_;
    std::vector<double> gregory_;
    std::vector<std::vector<double>> s1_, s2_, s2f_;
    std::vector<std::string> b_str_, n_str_, g_str_;
    mutable std::mutex mu_;
    mutable std::map<double, std::vector<Scalar>> theta_cache_;
};

double bernoulli(int r, BernoulliConvention c = BernoulliConvention::minus_half);
double n_alt(int r);
double gregory(int r);
double stirling(StirlingKind kind, int r, int k);

/// B_r from the closed form sum over 2^{-(k+1)} and binomial differences of j^{r-1}, evaluated exactly.
double bernoulli_closed_form(int r);
/// N_r = B_{r+1} (2^{r+1} - 1) / (r + 1) with B_1 = +1/2, evaluated exactly.
double n_alt_from_bernoulli(int r);

/// T-value of sum_{k>=1} e^{i theta k} k^r.
Scalar theta_r(double theta, int r);
/// sum_{k=1}^{n+1} k^r as a polynomial in n.
Scalar faulhaber_b(int r, Scalar n);
/// sum_{k=1}^{n+1} e^{i theta k} k^r continued to complex n.
Scalar omega_r(double theta, int r, Scalar n);
/// sum_{k=1}^{n+1} (k)_r, from (n+2)_{r+1} / (r+1).
Scalar falling_poly_d(int r, Scalar n);
/// sum_k s(r,k) Omega_k(n).
Scalar upsilon_r(double theta, int r, Scalar n);
/// sum_k s(r,k) Theta_k.
Scalar phi_r(double theta, int r);
/// Falling factorial (x)_m = x (x-1) ... (x-m+1).
Scalar falling_factorial(Scalar x, int m);
double binomial(int n, int k);

}  // namespace summa
