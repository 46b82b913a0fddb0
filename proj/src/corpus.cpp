#include "summa/corpus.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "summa/constants.hpp"
#include "summa/expression.hpp"
#include "summa/findiff.hpp"
#include "summa/fraceval.hpp"
#include "summa/sumcalc.hpp"
#include "summa/summability.hpp"

#ifndef SUMMA_DATA_DIR
#define SUMMA_DATA_DIR "data"
#endif

namespace summa {

CaseSource parse_case_source(const std::string& s) {
    if (s == "closed_form") return CaseSource::closed_form;
    if (s == "derived") return CaseSource::derived;
    if (s == "trivial") return CaseSource::trivial;
    throw Error(ErrorKind::parse, "unknown case source '" + s + "'");
}

const char* to_string(CaseSource s) {
    switch (s) {
        case CaseSource::closed_form: return "closed_form";
        case CaseSource::derived: return "derived";
        case CaseSource::trivial: return "trivial";
    }
    return "?";
}

// ------------------------------------------------------------------ reference constants

namespace {

double machin_pi() {
    auto atan_inv = [](double x) {  // atan(1/x)
        Accumulator acc;
        double p = 1 / x;
        for (int k = 0; k < 40; ++k, p /= x * x) acc += (k % 2 ? -p : p) / (2 * k + 1);
        return acc.value().real();
    };
    return 4 * (4 * atan_inv(5) - atan_inv(239));
}

double series_log2() {
    Accumulator acc;
    double p = 0.5;
    for (int k = 1; k < 60; ++k, p /= 2) acc += p / k;
    return acc.value().real();
}

double series_e() {
    Accumulator acc;
    double t = 1;
    for (int k = 0; k < 25; ++k) {
        acc += t;
        t /= k + 1;
    }
    return acc.value().real();
}

// zeta(2) = 1 + sum (24k^2 - 2)/(8k^3 - 2k)^2, tail ~ 1/(8N^3)
double fast_zeta2(long N) {
    Accumulator acc;
    acc += 1.0;
    for (long k = N; k >= 1; --k) {
        const double kk = double(k), d = 8 * kk * kk * kk - 2 * kk;
        acc += (24 * kk * kk - 2) / (d * d);
    }
    return acc.value().real();
}

}  // namespace

const std::vector<ReferenceConstant>& reference_constants() {
    static const std::vector<ReferenceConstant> table = [] {
        const double pi = machin_pi(), l2 = series_log2();
        std::vector<ReferenceConstant> t = {
            {"egamma", 0.57721566490153286061, -polygamma(0, 1.0).real(), "-psi(1) through the digamma asymptotic series"},
            {"zeta2", 1.6449340668482264365, fast_zeta2(200000), "1 + sum (24k^2-2)/(8k^3-2k)^2"},
            {"zeta3", 1.2020569031595942854, hasse_zeta(3.0, 60).value.real(), "Hasse series, 60 outer terms"},
            {"log2", 0.69314718055994530942, l2, "sum 1/(k 2^k)"},
            {"pi", 3.1415926535897932385, pi, "Machin's formula"},
            {"e", 2.7182818284590452354, series_e(), "sum 1/k!"},
            {"log2pi", 1.8378770664093454836, l2 + std::log(pi), "log 2 + log pi from the series above"},
            {"sqrt3_over_pi", 0.55132889542179204951, std::sqrt(3.0) / pi, "sqrt(3) over Machin's pi"},
        };
        return t;
    }();
    return table;
}

double reference_constant(const std::string& name) {
    for (const auto& c : reference_constants())
        if (c.name == name) return c.value;
    throw Error(ErrorKind::configuration, "unknown reference constant '" + name + "'");
}

// ------------------------------------------------------------------ parsing

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// At most max_fields pieces; the last keeps any further separators.
std::vector<std::string> split(const std::string& s, char sep, std::size_t max_fields = std::string::npos) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep && out.size() + 1 < max_fields) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

Scalar parse_expected(const std::string& text) {
    for (const auto& c : reference_constants())
        if (c.name == text) return c.value;
    return parse_complex(text);
}

}  // namespace

std::vector<IdentityCase> parse_corpus(const std::string& text) {
    std::vector<IdentityCase> out;
    std::vector<std::string> problems;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        const auto f = split(s, '|', 7);
        const std::string id = f.empty() ? std::string() : f[0];
        auto bad = [&](const std::string& why) {
            problems.push_back("line " + std::to_string(line) + " (" + (id.empty() ? "?" : id) + "): " + why);
        };
        if (f.size() != 7) {
            bad("expected 7 fields, found " + std::to_string(f.size()));
            continue;
        }
        try {
            IdentityCase c;
            c.id = id;
            c.op = f[1];
            c.line = line;
            if (c.id.empty()) throw Error(ErrorKind::parse, "empty id");
            const auto& ops = corpus_operations();
            if (std::find(ops.begin(), ops.end(), c.op) == ops.end())
                throw Error(ErrorKind::parse, "unknown operation '" + c.op + "'");
            for (const auto& kv : split(f[2], ';')) {
                if (kv.empty()) continue;
                const auto eq = kv.find('=');
                if (eq == std::string::npos) throw Error(ErrorKind::parse, "argument without '=': " + kv);
                c.args[trim(kv.substr(0, eq))] = trim(kv.substr(eq + 1));
            }
            c.expected_text = f[3];
            c.expected = parse_expected(f[3]);
            c.tolerance = std::stod(f[4]);
            if (!(c.tolerance > 0)) throw Error(ErrorKind::parse, "tolerance must be positive");
            c.source = parse_case_source(f[5]);
            c.cite = f[6];
            if (c.source == CaseSource::closed_form && c.cite.empty())
                throw Error(ErrorKind::parse, "closed_form case without a citation");
            for (const auto& o : out)
                if (o.id == c.id) throw Error(ErrorKind::parse, "duplicate id");
            out.push_back(std::move(c));
        } catch (const std::exception& e) {
            bad(e.what());
        }
    }
    if (!problems.empty()) {
        std::string msg = "corpus has " + std::to_string(problems.size()) + " malformed case(s):";
        for (const auto& p : problems) msg += "\n  " + p;
        throw Error(ErrorKind::parse, msg);
    }
    return out;
}

std::vector<IdentityCase> load_corpus(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::configuration, "cannot open corpus file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_corpus(ss.str());
}

std::string default_corpus_path() { return std::string(SUMMA_DATA_DIR) + "/identities.txt"; }

// ------------------------------------------------------------------ operations

namespace {

struct Args {
    const IdentityCase& c;

    bool has(const std::string& k) const { return c.args.count(k) > 0; }
    const std::string& str(const std::string& k) const {
        const auto it = c.args.find(k);
        if (it == c.args.end()) throw Error(ErrorKind::configuration, "missing argument '" + k + "'");
        return it->second;
    }
    std::string str(const std::string& k, const std::string& def) const { return has(k) ? str(k) : def; }
    Scalar cplx(const std::string& k) const { return parse_complex(str(k)); }
    Scalar cplx(const std::string& k, Scalar def) const { return has(k) ? cplx(k) : def; }
    double real(const std::string& k) const { return cplx(k).real(); }
    double real(const std::string& k, double def) const { return has(k) ? real(k) : def; }
    int integer(const std::string& k) const { return int(std::lround(real(k))); }
    int integer(const std::string& k, int def) const { return has(k) ? integer(k) : def; }
    bool flag(const std::string& k, bool def) const {
        if (!has(k)) return def;
        const auto& v = str(k);
        return v == "true" || v == "1" || v == "yes";
    }
    std::optional<int> order() const { return has("order") ? std::optional<int>(integer("order")) : std::nullopt; }

    FunctionOracle oracle(const std::string& key = "g") const {
        BuiltinParams p;
        p.expression = str(key);
        p.asymptotic_order = order();
        return builtin_oracle(BuiltinKind::custom_composite, p);
    }
    std::function<Scalar(Scalar)> function(const std::string& key) const {
        const Expr e = Expr::parse(str(key));
        return [e](Scalar x) { return e.value(x, 0.0); };
    }
    EvalConfig config() const {
        EvalConfig cfg;
        cfg.s_horizon = integer("s", cfg.s_horizon);
        cfg.m_order = integer("m", cfg.m_order);
        cfg.auto_double = flag("auto_double", cfg.auto_double);
        cfg.auto_order = flag("auto_order", cfg.auto_order);
        cfg.extrapolate = flag("extrapolate", cfg.extrapolate);
        cfg.tolerance = real("tolerance", cfg.tolerance);
        return cfg;
    }
};

SignSequence sequence_arg(const Args& a) {
    std::vector<Scalar> v;
    for (const auto& x : split(a.str("seq"), ',')) v.push_back(parse_complex(x));
    return SignSequence(v);
}

using Op = std::function<Scalar(const Args&)>;

const std::map<std::string, Op>& operations() {
    static const std::map<std::string, Op> ops = {
        {"hasse_zeta", [](const Args& a) { return hasse_zeta(a.cplx("s"), a.integer("terms")).value; }},
        {"zeta2_fast", [](const Args& a) { return Scalar(fast_zeta2(a.integer("N"))); }},
        {"zeta_identity",
         [](const Args& a) -> Scalar {
             const std::string n = a.str("name");
             auto z = [](int k) { return hasse_zeta(double(k), 60).value.real(); };
             Accumulator acc;
             if (n == "sum_zeta_minus_one" || n == "alt_zeta_minus_one" || n == "log2_from_zeta") {
                 for (int k = 2; k <= 60; ++k) {
                     const double t = z(k) - 1, s = k % 2 ? -1.0 : 1.0;
                     if (n == "sum_zeta_minus_one") acc += t;
                     else if (n == "alt_zeta_minus_one") acc += s * t;
                     else acc += s * t / k;
                 }
                 if (n == "log2_from_zeta") acc += 1 - std::numbers::egamma;
                 return acc.value();
             }
             if (n == "alt_zeta_over_k")
                 return euler_transform_sum([&](Scalar k) { return Scalar(z(int(std::lround(k.real()))) / k); }, 2.0,
                                            a.integer("depth", 50))
                     .value;
             throw Error(ErrorKind::configuration, "unknown zeta identity '" + n + "'");
         }},
        {"xi_sum",
         [](const Args& a) {
             const auto f = a.function("coef");
             const int n = a.integer("n");
             std::vector<Scalar> c(n + 1);
             for (int j = 0; j <= n; ++j) c[j] = f(double(j));
             return xi_sum(c, n, a.integer("shift", 0)).value;
         }},
        {"sequence_limit",
         [](const Args& a) {
             const auto f = a.function("seq");
             return t_sequence_limit([&](int j) { return f(double(j)); }, a.integer("count"),
                                     parse_sequence_mode(a.str("mode")))
                 .value;
         }},
        {"alt_tvalue",
         [](const Args& a) {
             return a.real("sign", 1.0) *
                    alt_divergent_value(a.oracle(), a.cplx("a", 1.0), a.integer("m", 1), a.cplx("n", 100.0)).value;
         }},
        {"osc_tvalue",
         [](const Args& a) {
             return osc_t_value(a.oracle(), a.real("theta"), a.cplx("a", 1.0), a.integer("m", 1), a.cplx("n", 100.0))
                 .value;
         }},
        {"series_sum",
         [](const Args& a) {
             const auto g = a.oracle();
             Accumulator acc;
             for (long k = a.integer("a", 1); k <= a.integer("N"); ++k) acc += g.value(double(k));
             return acc.value();
         }},
        {"product",
         [](const Args& a) {
             const auto g = a.oracle();
             Accumulator acc;
             for (long k = a.integer("a", 1); k <= a.integer("N"); ++k) acc += std::log(g.value(double(k)));
             return std::exp(acc.value());
         }},
        {"eval",
         [](const Args& a) -> Scalar {
             const EvalMode mode = parse_eval_mode(a.str("mode", "general"));
             const auto cfg = a.config();
             const Scalar lo = a.cplx("a", 1.0), hi = a.cplx("n");
             switch (mode) {
                 case EvalMode::semilinear: return eval_semilinear(a.oracle(), lo, hi, cfg).value;
                 case EvalMode::general_asymptotic: return eval_general(a.oracle(), lo, hi, cfg).value;
                 case EvalMode::oscillating: return eval_oscillating(a.oracle(), a.real("theta"), lo, hi, cfg).value;
                 case EvalMode::convoluted:
                     return eval_convoluted(bivariate_oracle(a.str("g"), a.order()), lo, hi, cfg, a.real("theta", 0))
                         .value;
             }
             return 0.0;
         }},
        {"eval_split",
         [](const Args& a) {
             return eval_oscillating_split(a.oracle(), a.real("theta"), a.cplx("a", 1.0), a.cplx("n")).value;
         }},
        {"eval_product", [](const Args& a) { return eval_product(a.oracle(), a.cplx("a", 1.0), a.cplx("n")).value; }},
        {"em_sum",
         [](const Args& a) { return em_sum(a.oracle(), a.cplx("a", 1.0), a.cplx("n"), a.integer("order_max", 40)).value; }},
        {"boundary_constant",
         [](const Args& a) {
             return em_boundary_constant(a.oracle(), a.integer("r", 1), parse_boundary_mode(a.str("mode", "em_asymptotic")),
                                         a.cplx("a", 1.0), a.integer("z", 20))
                 .value;
         }},
        {"sum_derivative",
         [](const Args& a) {
             return sum_derivative(a.oracle(), a.cplx("a", 1.0), a.cplx("n"), a.integer("r", 1),
                                   parse_boundary_mode(a.str("mode", "em_asymptotic")))
                 .value;
         }},
        {"derivative_convoluted",
         [](const Args& a) {
             return sum_derivative_convoluted(bivariate_oracle(a.str("g"), a.order()), a.cplx("a", 1.0), a.cplx("n"))
                 .value;
         }},
        {"periodic",
         [](const Args& a) {
             return periodic_accelerate(sequence_arg(a), a.oracle(), a.integer("a", 1), a.integer("m", 1),
                                        a.integer("n", 100))
                 .value;
         }},
        {"eval_periodic",
         [](const Args& a) {
             return eval_periodic(sequence_arg(a), a.oracle(), a.cplx("a", 1.0), a.cplx("n"), a.config()).value;
         }},
        {"identity",
         [](const Args& a) { return Scalar(identity_constant(a.str("name"), a.integer("terms", 0)).partial); }},
        {"gregory_sum",
         [](const Args& a) { return gregory_sum(a.oracle(), a.cplx("a", 1.0), a.cplx("n")).value; }},
        {"fd_derivative",
         [](const Args& a) {
             const auto grid = SampleGrid::sample(a.function("f"), a.cplx("x0"), a.real("h"), a.integer("J"));
             return fd_derivative(grid, a.integer("r", 1), a.integer("J"),
                                  parse_regularize(a.str("reg", "truncate")))
                 .value;
         }},
        {"newton",
         [](const Args& a) {
             const auto grid = SampleGrid::sample(a.function("f"), a.cplx("x0"), a.real("h"), a.integer("J"));
             return newton_interpolate(grid, a.cplx("x"), a.integer("J")).value;
         }},
        {"discrete_tvalue",
         [](const Args& a) {
             return discrete_osc_tvalue(a.oracle(), a.real("theta"), a.integer("a", 1), a.integer("m", 1),
                                        a.integer("n", 100))
                 .value;
         }},
        {"discrete_eval",
         [](const Args& a) {
             return discrete_osc_eval(a.oracle(), a.real("theta", 0), a.cplx("a", 1.0), a.cplx("n"), a.integer("m", 1),
                                      a.config())
                 .value;
         }},
    };
    return ops;
}

}  // namespace

const std::vector<std::string>& corpus_operations() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, _] : operations()) v.push_back(k);
        return v;
    }();
    return names;
}

CaseResult run_case(const IdentityCase& c) {
    CaseResult r;
    r.id = c.id;
    r.op = c.op;
    r.expected = c.expected;
    r.tolerance = c.tolerance;
    try {
        const auto it = operations().find(c.op);
        if (it == operations().end()) throw Error(ErrorKind::configuration, "unknown operation '" + c.op + "'");
        r.value = it->second(Args{c});
        r.error = std::abs(r.value - c.expected);
        r.passed = std::isfinite(r.error) && r.error <= c.tolerance;
        if (!std::isfinite(r.error)) r.message = "non-finite result";
    } catch (const std::exception& e) {
        r.error = INFINITY;
        r.message = e.what();
    }
    return r;
}

int CorpusReport::failures() const {
    return int(std::count_if(results.begin(), results.end(), [](const CaseResult& r) { return !r.passed; }));
}

std::string CorpusReport::table() const {
    std::ostringstream out;
    char buf[512];
    std::snprintf(buf, sizeof buf, "%-36s %-6s %-12s %-12s %s\n", "id", "status", "error", "tol", "value");
    out << buf;
    for (const auto& r : results) {
        std::snprintf(buf, sizeof buf, "%-36s %-6s %-12.4g %-12.4g %.15g%+.15gi%s%s\n", r.id.c_str(),
                      r.passed ? "PASS" : "FAIL", r.error, r.tolerance, r.value.real(), r.value.imag(),
                      r.message.empty() ? "" : "  ", r.message.c_str());
        out << buf;
    }
    std::snprintf(buf, sizeof buf, "%zu cases, %d failed\n", results.size(), failures());
    out << buf;
    return out.str();
}

std::string CorpusReport::json() const {
    nlohmann::ordered_json j;
    j["cases"] = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        nlohmann::ordered_json c;
        c["id"] = r.id;
        c["op"] = r.op;
        c["value"] = {{"re", r.value.real()}, {"im", r.value.imag()}};
        c["expected"] = {{"re", r.expected.real()}, {"im", r.expected.imag()}};
        c["error"] = std::isfinite(r.error) ? nlohmann::ordered_json(r.error) : nlohmann::ordered_json(nullptr);
        c["tolerance"] = r.tolerance;
        c["passed"] = r.passed;
        if (!r.message.empty()) c["message"] = r.message;
        j["cases"].push_back(c);
    }
    j["total"] = results.size();
    j["failures"] = failures();
    return j.dump(2);
}

CorpusReport run_corpus(const std::vector<IdentityCase>& cases, const std::string& filter, int threads) {
    std::vector<const IdentityCase*> chosen;
    for (const auto& c : cases)
        if (filter.empty() || fnmatch(filter.c_str(), c.id.c_str(), 0) == 0) chosen.push_back(&c);
    std::sort(chosen.begin(), chosen.end(), [](auto* x, auto* y) { return x->id < y->id; });

    CorpusReport rep;
    rep.results.resize(chosen.size());
    if (threads <= 0) threads = int(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min<int>(threads, int(chosen.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < chosen.size();) rep.results[i] = run_case(*chosen[i]);
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return rep;
}

CorpusReport run_corpus(const std::string& filter, int threads) {
    return run_corpus(load_corpus(default_corpus_path()), filter, threads);
}

}  // namespace summa
