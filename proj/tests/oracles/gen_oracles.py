#!/usr/bin/env python3
"""Reference values frozen into the C++ tests. Requires mpmath."""
from mpmath import mp, mpf, mpc, log, pi, sqrt, exp, zeta, euler, loggamma, gamma, harmonic, nsum, inf, polylog, diff, binomial, bernoulli, cos, sin, psi, barnesg, glaisher, quad

mp.dps = 40

def show(name, v):
    print(f"{name} = {mp.nstr(v, 20)}")

# Lindelof weights j^(-delta j), j = 0..N-1, 0^0 = 1
def lindelof(coef, delta, N):
    s = mpf(0)
    for j in range(N):
        w = mpf(1) if j == 0 else mpf(j) ** (-delta * j)
        if w < mpf(10) ** -40:
            break
        s += w * coef(j)
    return s

show("lindelof_grandi_0.025", lindelof(lambda j: (-1) ** j, mpf('0.025'), 10000))
show("lindelof_altk_0.025", lindelof(lambda j: (-1) ** (j + 1) * j, mpf('0.025'), 10000))

def chi(n, j):
    p = mpf(1)
    for k in range(1, j + 1):
        p *= 1 - mpf(k - 1) / n
    return p

def xi(coefs, n, m=0):
    return sum(chi(n, j + m) * coefs[j] for j in range(len(coefs)) if j + m <= n)

# Bernoulli series, B1 = +1/2
for x in (-1, 0, 1):
    c = [bernoulli(k) * x ** k for k in range(31)]
    c[1] = mpf(1) / 2 * x
    show(f"xi_bernoulli_n30_x{x}", xi(c, 30))

# (1+x)^-1 at x=2, n=40
c = [(-2) ** j for j in range(41)]
show("xi_inv_x2_n40_error", xi(c, 40) - mpf(1) / 3)
c = [(-1) ** (j + 1) * mpf(3) ** j / j for j in range(1, 31)]
show("xi_log_x3_n30_error", xi([0] + c, 30) - log(4))
c = [(j + 1) * (-1) ** j for j in range(101)]
show("xi_inv2_x1_n100_m0_error", xi(c, 100, 0) - mpf(1) / 4)
show("xi_inv2_x1_n100_m1_error", xi(c, 100, 1) - mpf(1) / 4)

# log Gamma(pi+1) by the general evaluation formula with m=1, s=1e4
n = +pi
s = 10000
b1 = lambda x: (x + 1) * (x + 2) / 2
corr = (n + 1 - 1) * log(s) + (b1(n) - b1(0)) / s
tail = mp.fsum(log(k + 1) - log(k + n + 1) for k in range(0, s + 1))
show("loggamma_pi1_m1_s1e4_error", corr + tail - loggamma(pi + 1))
corr0 = (n + 1 - 1) * log(s)
show("loggamma_pi1_m0_s1e4_error", corr0 + tail - loggamma(pi + 1))
show("loggamma_pi1", loggamma(pi + 1))

# convoluted sum of log(1+k/n): closed form log Gamma(2n+1) - log Gamma(n+1) - n log n
for nn in (mpf(2), mpf(1) / 2):
    show(f"conv_log1pk_over_n_{nn}", loggamma(2 * nn + 1) - loggamma(nn + 1) - nn * log(nn))

# sum_{k=1}^{x} (-1)^k log k at x = 1/2 via splitting identity
x = mpf(1) / 2
def altlog_tail(c):
    # T-value of sum_{j>=0} e^{i pi (c+j)} log(c+j) via Euler transform of the alternating sum
    ph = exp(1j * pi * c)
    return ph * nsum(lambda j: (-1) ** int(j) * log(c + j), [0, inf])
v = altlog_tail(mpf(1)) - altlog_tail(x + 1)
show("osc_altlog_half", v)
v0 = mpf(0) - mpf(0)
v = exp(0) * nsum(lambda j: (-1) ** int(j) * j, [0, inf]) - exp(1j * pi * (x + 1)) * nsum(lambda j: (-1) ** int(j) * (x + 1 + j), [0, inf])
show("osc_altk_from0_half", v)

# boundary constants
show("sqrt_boundary_c1", zeta(mpf(1) / 2) + 0)  # placeholder, see below
# c1 for sqrt: f'(0) where f(n)=sum_{k=1}^n sqrt k = zeta(-1/2) - zeta(-1/2, n+1)
f = lambda n: zeta(-mpf(1) / 2) - zeta(-mpf(1) / 2, n + 1)
show("sqrt_sum_derivative_at0", diff(f, 0))
show("d_sum_1_over_k_plus_n_at1", zeta(2) - mpf(3) / 2)

# hyperfactorial constant
K = -euler / 6 + nsum(lambda k: (-1) ** int(k) * zeta(k) / (k * (k + 1) * (k + 2)), [2, inf])
show("hyper_K", K)
show("log_glaisher_minus_3_4_plus_quarter_log2pi", log(glaisher) - mpf(3) / 4 + log(2 * pi) / 4)

def hyper_asym(n):
    n = mpf(n)
    return (1 + n) ** ((1 + n) ** 2 / 2) * exp(K) / (exp(n + n ** 2 / 4) * n ** (mpf(1) / 6) * sqrt(gamma(n + 1)))
def hyper(n):
    p = mpf(1)
    for k in range(1, n + 1):
        p *= mpf(k) ** k
    return p
show("hyper_ratio_8", hyper_asym(8) / hyper(8))
def fact_asym(n):
    n = mpf(n)
    return sqrt(2 * pi * (n + 1)) * ((n + 1) / exp(1)) ** n / exp(1)
show("fact_ratio_10", fact_asym(10) / gamma(11))
def second_asym(n):
    n = mpf(n)
    return exp(zeta(3) / (4 * pi ** 2)) * n ** ((2 * n ** 3 + 3 * n ** 2 + n) / 6) * exp(n / 12 - n ** 3 / 9)
def second(n):
    p = mpf(1)
    for k in range(1, n + 1):
        p *= mpf(k) ** (k * k)
    return p
show("second_ratio_6", second_asym(6) / second(6))
show("super_ratio_6_barnes", 1)

# Barnes G derivative check at w=1: (log G(w+1))' = (log 2pi - 1)/2 - w + w psi(w+1)
w = mpf(1)
show("dlogG_at2_numeric", diff(lambda t: log(barnesg(t + 1)), w))
show("dlogG_at2_formula", (log(2 * pi) - 1) / 2 - w + w * psi(0, w + 1))

# Euler-sum targets
show("half_log_2_over_pi", log(2 / pi) / 2)
show("alt_inv_k2", pi ** 2 / 12)
show("log_pi_minus_gamma_over_2", (log(pi) - euler) / 2)
show("log_2_over_pi_over_8", log(2 / pi) / 8)
show("superfactorial_reg_target", (log(2 * pi) - 1) / 2 - euler)

# derivative of log n! at 0 via weighted series for increasing z
def cor254(z, a=1, n=0):
    # f'(n) = sum_{k=1}^z (n-a)^{k-1}/(k-1)! sum_{r=0}^{z-k} (-1)^r B_r g^{(k+r-1)}(a+1)/r!, g=log, B1=+1/2
    def B(r):
        return mpf(1) / 2 if r == 1 else bernoulli(r)
    def gder(q, x):
        if q == 0:
            return log(x)
        return (-1) ** (q - 1) * mp.factorial(q - 1) / mpf(x) ** q
    tot = mpf(0)
    for k in range(1, z + 1):
        inner = sum((-1) ** r * B(r) * gder(k + r - 1, a + 1) / mp.factorial(r) for r in range(0, z - k + 1))
        tot += mpf(n - a) ** (k - 1) / mp.factorial(k - 1) * inner
    return tot
for z in (10, 20, 30):
    show(f"cor254_z{z}_error", cor254(z) + euler)

# Gregory sums
G = [mpf(1)]
for nn in range(1, 111):
    v = mpf((-1) ** (nn + 1)) / (nn + 1)
    for k in range(1, nn):
        v -= (-1) ** k * G[nn - k] / mpf(k + 1)
    G.append(v)
show("G2", G[2]); show("G4", G[4])
show("kluyver_100", sum(abs(G[r]) / r for r in range(1, 101)))
show("gregory_r1_50", sum(abs(G[r]) / (r + 1) for r in range(1, 51)))
show("gregory_r1_30", sum(abs(G[r]) / (r + 1) for r in range(1, 31)))
show("one_minus_log2", 1 - log(2))

# finite-difference derivative: D = log(1 + Delta) / h
def fwd(f, x0, h, J):
    v = [f(x0 + j * h) for j in range(J + 1)]
    out = []
    for j in range(J + 1):
        out.append(v[0])
        v = [v[i + 1] - v[i] for i in range(len(v) - 1)]
    return out

def fd_first(f, x0, h, J, weight):
    d = fwd(f, x0, h, J)
    return sum(weight(j) * (-1) ** (j + 1) * d[j] / j for j in range(1, J + 1)) / h

show("fd_log_trunc30", fd_first(log, mpf(1), mpf(1), 30, lambda j: 1))
show("fd_log_xi30", fd_first(log, mpf(1), mpf(1), 30, lambda j: chi(30, j)))
show("fd_log_xiext30", 2 * fd_first(log, mpf(1), mpf(1), 30, lambda j: chi(30, j)) - fd_first(log, mpf(1), mpf(1), 15, lambda j: chi(15, j)))
sp = lambda x: sin(pi * x)
x0 = mpf('0.25')
show("fd_sinpi_target", pi * cos(pi * x0))
for J in (20, 40):
    show(f"fd_sinpi_xi{J}", fd_first(sp, x0, mpf('0.4'), J, lambda j, J=J: chi(J, j)))
show("fd_sinpi_xiext40", 2 * fd_first(sp, x0, mpf('0.4'), 40, lambda j: chi(40, j)) - fd_first(sp, x0, mpf('0.4'), 20, lambda j: chi(20, j)))

# signed Gregory series with period-6 sign patterns
def signed(pattern, N):
    return sum(pattern[(r - 1) % 6] * abs(G[r]) for r in range(1, N + 1))
show("sqrt3pi_a_40", signed([1, 1, 0, -1, -1, 0], 40))
show("sqrt3pi_b_40", signed([0, 1, 1, 0, -1, -1], 40))
show("sqrt3pi_c_40", signed([1, 0, -1, -1, 0, 1], 40))
show("sqrt3pi", sqrt(3) / pi)
show("gregory_rm1_100", sum(abs(G[r]) / (r - 1) for r in range(2, 102)))
show("gregory_rm1_target", (log(2 * pi) - 1 - euler) / 2)

def fdiff_at(g, x, k):
    return sum((-1) ** (k - j) * binomial(k, j) * g(x + j) for j in range(k + 1))

# Ser: lambda = sum_{k>=1} (-1)^{k+1} Delta^k log(1) / (k+1)
show("ser_12", exp(sum((-1) ** (k + 1) * fdiff_at(log, 1, k) / (k + 1) for k in range(1, 13))))
show("e_lambda", exp(euler))
# e^pi: pi = sum_{k>=1} (-1)^{k+1} Delta^{k-1} q(1) / k, q(j) = log((4j-1)/(4j-3))
q = lambda j: log(mpf(4 * j - 1) / (4 * j - 3))
show("epi_30", exp(sum((-1) ** (k + 1) * fdiff_at(q, 1, k - 1) / k for k in range(1, 31))))
show("e_pi", exp(pi))
