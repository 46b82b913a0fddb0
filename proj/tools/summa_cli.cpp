// summa: command-line front end.
//
//   summa eval --sum "sum k=1..n of 1/k @ n=0.5"
//   summa sum --method xi --n 1000 --series "sum k=0..inf of alt*1"
//   summa verify --json
//
// Exit status: 0 success, 1 numeric failure, 2 usage error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "summa/constants.hpp"
#include "summa/corpus.hpp"
#include "summa/descriptor.hpp"
#include "summa/expression.hpp"
#include "summa/findiff.hpp"
#include "summa/fraceval.hpp"
#include "summa/sumcalc.hpp"
#include "summa/summability.hpp"

using namespace summa;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json scalar_json(Scalar z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json result_json(Scalar value, std::optional<double> err, const std::string& method, int terms,
                 const std::string& diagnostics) {
    json j;
    j["value"] = scalar_json(value);
    j["error_estimate"] = err && std::isfinite(*err) ? json(*err) : json(nullptr);
    j["method"] = method;
    j["terms_used"] = terms;
    j["diagnostics"] = diagnostics;
    return j;
}

json result_json(const SummationResult& r, const std::string& method) {
    return result_json(r.value, r.error_estimate, method, r.terms_used, to_string(r.diagnostics));
}

json result_json(const SeriesValue& r, const std::string& method) {
    return result_json(r.value, r.error_estimate, method, r.terms_used, "series_truncated");
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

FiniteSumSpec descriptor(const std::string& text) { return parse_descriptor(text); }

Scalar spec_sign(const FiniteSumSpec& s, double k) {
    switch (s.sign) {
        case FiniteSumSpec::Sign::none: return 1.0;
        case FiniteSumSpec::Sign::alternating: return phase(std::numbers::pi, k);
        case FiniteSumSpec::Sign::theta: return phase(s.theta, k);
        case FiniteSumSpec::Sign::periodic: {
            const long p = long(s.period.size()), i = std::lround(k);
            return s.period[std::size_t(((i % p) + p) % p)];
        }
    }
    return 1.0;
}

std::optional<int> order_opt(int order) { return order >= 0 ? std::optional<int>(order) : std::nullopt; }

// ------------------------------------------------------------------ eval

struct EvalOpts {
    std::string sum, at, mode, table;
    int s = 10000, m = 1, order = -1;
    double tolerance = 1e-10;
    bool fixed = false;
};

SummationResult eval_spec(const FiniteSumSpec& spec, Scalar n, const EvalOpts& o, std::string& method) {
    EvalConfig cfg;
    cfg.s_horizon = o.s;
    cfg.m_order = o.m;
    cfg.tolerance = o.tolerance;
    if (o.fixed) cfg.auto_double = cfg.auto_order = false;
    std::string mode = o.mode;
    if (mode.empty()) {
        if (spec.convoluted) mode = "convoluted";
        else if (spec.sign == FiniteSumSpec::Sign::alternating || spec.sign == FiniteSumSpec::Sign::theta)
            mode = "oscillating";
        else if (spec.sign == FiniteSumSpec::Sign::periodic) mode = "periodic";
        else mode = "general";
    }
    method = mode;
    if (mode == "periodic") {
        if (spec.sign != FiniteSumSpec::Sign::periodic) throw UsageError("periodic mode needs a period: sign spec");
        return eval_periodic(SignSequence(spec.period), spec_oracle(spec, order_opt(o.order)), spec.a, n, cfg);
    }
    if (spec.sign == FiniteSumSpec::Sign::periodic) throw UsageError("a period: sign spec needs the periodic mode");
    switch (parse_eval_mode(mode)) {
        case EvalMode::semilinear:
            if (spec.angle() != 0) throw UsageError("semilinear mode takes no sign spec");
            return eval_semilinear(spec_oracle(spec, order_opt(o.order)), spec.a, n, cfg);
        case EvalMode::general_asymptotic:
            if (spec.angle() != 0) throw UsageError("general mode takes no sign spec; use oscillating");
            return eval_general(spec_oracle(spec, order_opt(o.order)), spec.a, n, cfg);
        case EvalMode::oscillating:
            return eval_oscillating(spec_oracle(spec, order_opt(o.order)), spec.angle(), spec.a, n, cfg);
        case EvalMode::convoluted:
            return eval_convoluted(spec_bivariate(spec, order_opt(o.order)), spec.a, n, cfg, spec.angle());
    }
    throw UsageError("unknown mode");
}

int run_eval(const EvalOpts& o) {
    const auto spec = descriptor(o.sum);
    if (spec.infinite) throw UsageError("eval needs a finite upper bound; use 'sum' or 'accelerate'");
    std::string method;
    if (!o.table.empty()) {
        double lo, hi, step;
        char c1, c2;
        std::istringstream in(o.table);
        if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0))
            throw UsageError("--table expects n0:n1:step");
        std::cout << "n,re,im,error_estimate\n";
        for (long i = 0;; ++i) {
            const double n = lo + double(i) * step;
            if (n > hi + 1e-12 * std::abs(step)) break;
            const auto r = eval_spec(spec, n, o, method);
            std::printf("%.17g,%.17g,%.17g,%.6g\n", n, r.value.real(), r.value.imag(), r.error_estimate.value_or(NAN));
        }
        return 0;
    }
    std::optional<Scalar> n = spec.n;
    if (!o.at.empty()) n = parse_complex(o.at);
    if (!n) throw UsageError("no value for n: give '@ n=...' in the descriptor or --at");
    const auto r = eval_spec(spec, *n, o, method);
    auto j = result_json(r, method);
    j["descriptor"] = spec.canonical();
    print(j);
    return 0;
}

// ------------------------------------------------------------------ sum

struct SumOpts {
    std::string series, method = "xi";
    int n = 1000, shift = 0;
};

int run_sum(const SumOpts& o) {
    const auto spec = descriptor(o.series);
    if (spec.convoluted) throw UsageError("a divergent series cannot depend on n");
    const auto g = spec_oracle(spec);
    auto coef = [&](int j) {
        const double k = spec.a.real() + j;
        return spec_sign(spec, k) * g.value(k);
    };
    SummationResult r;
    if (o.method == "xi") {
        std::vector<Scalar> c(o.n + 1);
        for (int j = 0; j <= o.n; ++j) c[j] = coef(j);
        r = xi_sum(c, o.n, o.shift);
    } else if (o.method == "lindelof") {
        r = lindelof_sum(coef, default_lindelof_schedule(), o.n);
    } else if (o.method == "euler") {
        if (spec.sign == FiniteSumSpec::Sign::alternating) r = euler_transform_sum(g, spec.a, o.n);
        else if (spec.sign == FiniteSumSpec::Sign::theta)
            r = euler_transform_phase([&](Scalar k) { return g.value(k); }, spec.theta, spec.a, o.n);
        else throw UsageError("the Euler transform needs an alt or theta sign spec");
    } else if (o.method == "cesaro") {
        std::vector<Scalar> partial(o.n);
        Accumulator acc;
        for (int j = 0; j < o.n; ++j) partial[j] = (acc += coef(j)).value();
        r = t_sequence_limit([&](int j) { return partial[j]; }, o.n, SequenceMode::cesaro);
    } else {
        throw UsageError("unknown method " + o.method);
    }
    auto j = result_json(r, o.method);
    j["descriptor"] = spec.canonical();
    print(j);
    return 0;
}

// ------------------------------------------------------------------ derive

struct DeriveOpts {
    std::string sum, at, mode = "em_asymptotic";
    int r = 1, z = 20;
};

int run_derive(const DeriveOpts& o) {
    const auto spec = descriptor(o.sum);
    std::optional<Scalar> n = spec.n;
    if (!o.at.empty()) n = parse_complex(o.at);
    if (!n) throw UsageError("no value for n");
    if (spec.angle() != 0 || spec.sign == FiniteSumSpec::Sign::periodic)
        throw UsageError("derive handles plain and convoluted sums");
    SeriesValue v;
    std::string method;
    if (spec.convoluted) {
        if (o.r != 1) throw UsageError("convoluted derivatives are first order only");
        v = sum_derivative_convoluted(spec_bivariate(spec), spec.a, *n);
        method = "convoluted";
    } else {
        v = sum_derivative(spec_oracle(spec), spec.a, *n, o.r, parse_boundary_mode(o.mode), o.z);
        method = o.mode;
    }
    auto j = result_json(v, method);
    j["order"] = o.r;
    j["descriptor"] = spec.canonical();
    print(j);
    return 0;
}

// ------------------------------------------------------------------ accelerate

struct AccelOpts {
    std::string series;
    int m = 1, n = 100, order = -1;
};

int run_accelerate(const AccelOpts& o) {
    const auto spec = descriptor(o.series);
    if (!spec.infinite) throw UsageError("accelerate needs an infinite series (upper bound inf)");
    const auto g = spec_oracle(spec, order_opt(o.order));
    SummationResult r;
    std::string method;
    switch (spec.sign) {
        case FiniteSumSpec::Sign::alternating:
            r = alt_divergent_value(g, spec.a, o.m, double(o.n));
            method = "alternating_tail";
            break;
        case FiniteSumSpec::Sign::theta:
            r = osc_t_value(g, spec.theta, spec.a, o.m, double(o.n));
            method = "oscillating_tail";
            break;
        case FiniteSumSpec::Sign::periodic:
            if (!is_integer(spec.a)) throw UsageError("periodic acceleration needs an integer lower bound");
            r = periodic_accelerate(SignSequence(spec.period), g, std::lround(spec.a.real()), o.m, o.n);
            method = "periodic_tail";
            break;
        case FiniteSumSpec::Sign::none: throw UsageError("accelerate needs an alt, theta or period sign spec");
    }
    auto j = result_json(r, method);
    j["descriptor"] = spec.canonical();
    print(j);
    return 0;
}

// ------------------------------------------------------------------ asym

int run_asym(const std::string& family, double n) {
    const auto kind = parse_factorial_family(family);
    const auto a = stirling_glaisher_expansion(kind, n);
    auto j = result_json(a.value, std::nullopt, "asymptotic_" + family, 0, a.order_note);
    j["log_value"] = a.log_value;
    if (n >= 1 && std::floor(n) == n && n <= 1e6) {
        const double exact = factorial_family_exact_log(kind, int(n));
        j["exact_log"] = exact;
        j["ratio"] = std::exp(a.log_value - exact);
    }
    print(j);
    return 0;
}

// ------------------------------------------------------------------ fd

struct FdOpts {
    std::string op = "derivative", csv, f, reg = "truncate";
    double x0 = 0, h = 1, bandwidth = 0;
    std::string x, a = "1", n;
    int J = 20, r = 1;
};

SampleGrid read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::vector<double> xs, fs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double x, f;
        if (!(ls >> x >> f)) {
            if (xs.empty()) continue;  // header
            throw UsageError("malformed CSV row: " + line);
        }
        xs.push_back(x);
        fs.push_back(f);
    }
    if (xs.size() < 2) throw UsageError("CSV needs at least two samples");
    SampleGrid g;
    g.x0 = xs[0];
    g.h = xs[1] - xs[0];
    for (std::size_t i = 2; i < xs.size(); ++i)
        if (std::abs(xs[i] - xs[i - 1] - g.h) > 1e-9 * std::abs(g.h)) throw UsageError("CSV samples are not equally spaced");
    for (double f : fs) g.values.push_back(f);
    g.validate();
    return g;
}

int run_fd(const FdOpts& o) {
    json j;
    if (o.op == "gregory") {
        if (o.f.empty()) throw UsageError("gregory needs --f");
        BuiltinParams p;
        p.expression = o.f;
        const auto g = builtin_oracle(BuiltinKind::custom_composite, p);
        if (o.n.empty()) throw UsageError("gregory needs --n");
        const auto v = gregory_sum(g, parse_complex(o.a), parse_complex(o.n), o.J);
        print(result_json(v, "gregory"));
        return 0;
    }
    SampleGrid grid;
    std::optional<Expr> e;
    if (!o.csv.empty()) {
        grid = read_csv(o.csv);
    } else {
        if (o.f.empty()) throw UsageError("fd needs --csv or --f");
        e = Expr::parse(o.f);
        grid = SampleGrid::sample([&](Scalar x) { return e->value(x, 0.0); }, o.x0, o.h, o.J);
    }
    FdResult r;
    if (o.op == "derivative") {
        r = fd_derivative(grid, o.r, std::min(o.J, grid.order()), parse_regularize(o.reg),
                          o.bandwidth > 0 ? std::optional<double>(o.bandwidth) : std::nullopt);
    } else if (o.op == "interpolate") {
        if (o.x.empty()) throw UsageError("interpolate needs --x");
        r = newton_interpolate(grid, parse_complex(o.x), std::min(o.J, grid.order()));
    } else {
        throw UsageError("unknown fd op " + o.op);
    }
    if (e && r.warnings.empty())
        if (auto w = midpoint_alias_check([&](Scalar x) { return e->value(x, 0.0); }, grid, r.order_used))
            r.warnings.push_back(*w);
    j = result_json(r.value, std::nullopt, o.op == "derivative" ? "fd_" + o.reg : "newton", r.order_used,
                    r.warnings.empty() ? "ok" : "warning");
    j["capped"] = r.capped;
    j["warnings"] = r.warnings;
    print(j);
    return 0;
}

// ------------------------------------------------------------------ constants

int run_constants(const std::string& table, int max, double theta, bool exact) {
    const auto& t = ConstantTables::instance();
    if (max < 0 || max >= t.bound()) throw UsageError("--max must be below " + std::to_string(t.bound()));
    json j;
    j["name"] = table;
    json values = json::array();
    for (int r = 0; r <= max; ++r) {
        if (table == "bernoulli") values.push_back(exact ? json(t.bernoulli_string(r)) : json(t.bernoulli(r)));
        else if (table == "bernoulli_plus")
            values.push_back(t.bernoulli(r, BernoulliConvention::plus_half));
        else if (table == "n_alt") values.push_back(exact ? json(t.n_alt_string(r)) : json(t.n_alt(r)));
        else if (table == "gregory") values.push_back(exact ? json(t.gregory_string(r)) : json(t.gregory(r)));
        else if (table == "stirling1" || table == "stirling2") {
            json row = json::array();
            const auto kind = table == "stirling1" ? StirlingKind::first : StirlingKind::second;
            for (int k = 0; k <= r; ++k) row.push_back(t.stirling(kind, r, k));
            values.push_back(row);
        } else if (table == "theta") values.push_back(scalar_json(theta_r(theta, r)));
        else if (table == "phi") values.push_back(scalar_json(phi_r(theta, r)));
        else throw UsageError("unknown table " + table);
    }
    j["values"] = values;
    print(j);
    return 0;
}

// ------------------------------------------------------------------ verify

int run_verify(const std::string& path, const std::string& filter, bool as_json, int threads) {
    const auto cases = load_corpus(path.empty() ? default_corpus_path() : path);
    const auto rep = run_corpus(cases, filter, threads);
    if (as_json) std::cout << rep.json() << "\n";
    else std::cout << rep.table();
    return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"summa: fractional finite sums and generalized values of divergent series"};
    app.require_subcommand(1);

    EvalOpts eo;
    auto* eval = app.add_subcommand("eval", "evaluate a finite sum at a complex upper bound");
    eval->add_option("--sum", eo.sum, "descriptor, e.g. \"sum k=1..n of 1/k @ n=0.5\"")->required();
    eval->add_option("--at", eo.at, "value of n (overrides '@ n=')");
    eval->add_option("--mode", eo.mode, "semilinear, general, oscillating, convoluted or periodic");
    eval->add_option("--s", eo.s, "starting horizon");
    eval->add_option("--m", eo.m, "correction order");
    eval->add_option("--order", eo.order, "declared asymptotic order of the summand");
    eval->add_option("--tolerance", eo.tolerance, "relative tolerance for horizon doubling");
    eval->add_flag("--fixed", eo.fixed, "no horizon doubling or order raising");
    eval->add_option("--table", eo.table, "n0:n1:step, emit CSV");

    SumOpts so;
    auto* sum = app.add_subcommand("sum", "generalized value of an infinite series");
    sum->add_option("--series", so.series, "descriptor with upper bound inf")->required();
    sum->add_option("--method", so.method, "xi, lindelof, euler or cesaro")
        ->check(CLI::IsMember({"xi", "lindelof", "euler", "cesaro"}));
    sum->add_option("--n", so.n, "Xi parameter / number of terms");
    sum->add_option("--shift", so.shift, "Xi weight shift m");

    DeriveOpts dop;
    auto* derive = app.add_subcommand("derive", "derivative of a finite sum in n");
    derive->add_option("--sum", dop.sum, "descriptor")->required();
    derive->add_option("--at", dop.at, "value of n");
    derive->add_option("--r", dop.r, "derivative order");
    derive->add_option("--mode", dop.mode, "boundary constant: em_asymptotic, xi_weighted, semilinear_limit");
    derive->add_option("--z", dop.z, "truncation of the weighted series");

    AccelOpts ao;
    auto* acc = app.add_subcommand("accelerate", "T-value of an alternating, oscillating or periodic series");
    acc->add_option("--series", ao.series, "descriptor with upper bound inf")->required();
    acc->add_option("--m", ao.m, "tail order");
    acc->add_option("--n", ao.n, "terms summed directly");
    acc->add_option("--order", ao.order, "declared asymptotic order of the summand");

    std::string family = "factorial";
    double an = 10;
    auto* asym = app.add_subcommand("asym", "asymptotic expansion of the factorial family");
    asym->add_option("--family", family, "factorial, hyperfactorial, superfactorial, second_factorial");
    asym->add_option("--n", an, "argument");

    FdOpts fo;
    auto* fd = app.add_subcommand("fd", "finite differences: derivative, interpolate, gregory");
    fd->add_option("--op", fo.op, "derivative, interpolate or gregory")
        ->check(CLI::IsMember({"derivative", "interpolate", "gregory"}));
    fd->add_option("--csv", fo.csv, "samples as x,f rows");
    fd->add_option("--f", fo.f, "expression in k");
    fd->add_option("--x0", fo.x0, "first sample point");
    fd->add_option("--step", fo.h, "sample step h");
    fd->add_option("--J", fo.J, "difference order");
    fd->add_option("--r", fo.r, "derivative order");
    fd->add_option("--reg", fo.reg, "truncate, xi or xi_extrapolated");
    fd->add_option("--bandwidth", fo.bandwidth, "declared bandwidth B (warns when h >= 1/(2B))");
    fd->add_option("--x", fo.x, "interpolation point");
    fd->add_option("--a", fo.a, "gregory lower bound");
    fd->add_option("--n", fo.n, "gregory upper bound");

    std::string table = "bernoulli";
    int cmax = 10;
    double ctheta = 1.0;
    bool exact = false;
    auto* consts = app.add_subcommand("constants", "dump a constant table as JSON");
    consts->add_option("--table", table, "bernoulli, bernoulli_plus, n_alt, gregory, stirling1, stirling2, theta, phi");
    consts->add_option("--max", cmax, "largest index");
    consts->add_option("--theta", ctheta, "angle for theta and phi");
    consts->add_flag("--exact", exact, "rationals as strings");

    std::string corpus, filter;
    bool as_json = false;
    int threads = 0;
    auto* verify = app.add_subcommand("verify", "run the identity corpus");
    verify->add_option("--corpus", corpus, "corpus file");
    verify->add_option("--filter", filter, "id glob");
    verify->add_flag("--json", as_json, "machine-readable report");
    verify->add_option("--threads", threads, "worker threads (0: all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (*eval) return run_eval(eo);
        if (*sum) return run_sum(so);
        if (*derive) return run_derive(dop);
        if (*acc) return run_accelerate(ao);
        if (*asym) return run_asym(family, an);
        if (*fd) return run_fd(fo);
        if (*consts) return run_constants(table, cmax, ctheta, exact);
        if (*verify) return run_verify(corpus, filter, as_json, threads);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << to_string(e.kind()) << " error: " << e.what() << "\n";
        const bool usage = e.kind() == ErrorKind::parse || e.kind() == ErrorKind::configuration;
        return usage ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
