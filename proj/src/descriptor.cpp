#include "summa/descriptor.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "summa/expression.hpp"

namespace summa {

namespace {

class Cursor {
public:
    explicit Cursor(const std::string& s) : s_(s) {}

    [[noreturn]] void fail(const std::string& why, std::size_t at) const {
        throw Error(ErrorKind::parse, why + "\n  " + s_ + "\n  " + std::string(at, ' ') + "^");
    }
    [[noreturn]] void fail(const std::string& why) const { fail(why, pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(const std::string& w) {
        skip();
        if (s_.compare(pos_, w.size(), w) == 0) {
            pos_ += w.size();
            return true;
        }
        return false;
    }
    void expect(const std::string& w) {
        if (!eat(w)) fail("expected '" + w + "'");
    }
    // Text up to (not including) the first occurrence of any stop string at depth 0.
    std::string until(const std::vector<std::string>& stops) {
        skip();
        const std::size_t start = pos_;
        int depth = 0;
        while (pos_ < s_.size()) {
            const char c = s_[pos_];
            if (depth == 0)
                for (const auto& st : stops)
                    if (s_.compare(pos_, st.size(), st) == 0) return trimmed(start);
            if (c == '(' || c == '[') ++depth;
            if (c == ')' || c == ']') --depth;
            ++pos_;
        }
        return trimmed(start);
    }
    bool done() {
        skip();
        return pos_ >= s_.size();
    }
    std::size_t pos() const { return pos_; }

private:
    std::string trimmed(std::size_t start) const {
        std::string t = s_.substr(start, pos_ - start);
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
        return t;
    }
    const std::string& s_;
    std::size_t pos_ = 0;
};

Scalar complex_at(const Cursor& cur, const std::string& text, std::size_t at) {
    try {
        return parse_complex(text);
    } catch (const Error&) {
        cur.fail("malformed complex literal '" + text + "'", at);
    }
}

}  // namespace

std::string format_complex(Scalar z) {
    auto num = [](double v) {
        char buf[40];
        for (int p = 1; p <= 17; ++p) {
            std::snprintf(buf, sizeof buf, "%.*g", p, v);
            if (std::strtod(buf, nullptr) == v) break;
        }
        return std::string(buf);
    };
    if (z.imag() == 0) return num(z.real());
    if (z.real() == 0) return num(z.imag()) + "i";
    return num(z.real()) + (z.imag() < 0 ? "" : "+") + num(z.imag()) + "i";
}

double FiniteSumSpec::angle() const {
    switch (sign) {
        case Sign::alternating: return std::numbers::pi;
        case Sign::theta: return theta;
        default: return 0.0;
    }
}

std::string FiniteSumSpec::canonical() const {
    std::string s = "sum k=" + format_complex(a) + "..";
    if (infinite) s += "inf";
    else if (symbolic_upper) s += "n";
    else s += format_complex(*n);
    s += " of ";
    switch (sign) {
        case Sign::none: break;
        case Sign::alternating: s += "alt*"; break;
        case Sign::theta: s += "theta=" + format_complex(theta) + "*"; break;
        case Sign::periodic: {
            s += "period:[";
            for (std::size_t i = 0; i < period.size(); ++i) s += (i ? "," : "") + format_complex(period[i]);
            s += "]*";
            break;
        }
    }
    s += body;
    if (symbolic_upper && n) s += " @ n=" + format_complex(*n);
    return s;
}

FiniteSumSpec parse_descriptor(const std::string& text) {
    Cursor cur(text);
    FiniteSumSpec spec;
    cur.expect("sum");
    cur.expect("k");
    cur.expect("=");
    std::size_t at = (cur.skip(), cur.pos());
    const std::string lower = cur.until({".."});
    spec.a = complex_at(cur, lower, at);
    cur.expect("..");
    at = (cur.skip(), cur.pos());
    const std::string upper = cur.until({" of "});
    if (upper == "inf") {
        spec.infinite = true;
        spec.symbolic_upper = false;
    } else if (upper == "n") {
        spec.symbolic_upper = true;
    } else {
        spec.symbolic_upper = false;
        spec.n = complex_at(cur, upper, at);
    }
    cur.expect("of");

    cur.skip();
    at = cur.pos();
    if (cur.eat("alt*")) {
        spec.sign = FiniteSumSpec::Sign::alternating;
    } else if (cur.eat("theta=")) {
        const std::size_t t_at = cur.pos();
        const std::string t = cur.until({"*"});
        const Scalar v = complex_at(cur, t, t_at);
        if (v.imag() != 0) cur.fail("theta must be real", t_at);
        spec.sign = FiniteSumSpec::Sign::theta;
        spec.theta = v.real();
        cur.expect("*");
    } else if (cur.eat("period:")) {
        if (!cur.eat("[")) cur.fail("a periodic sign spec needs a bracketed list");
        const std::size_t l_at = cur.pos();
        const std::string list = cur.until({"]"});
        if (!cur.eat("]")) cur.fail("unterminated periodic sign list");
        if (list.empty()) cur.fail("empty periodic sign list", l_at);
        std::size_t start = 0;
        while (start <= list.size()) {
            const auto comma = list.find(',', start);
            const std::string item = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            spec.period.push_back(complex_at(cur, item, l_at + start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        spec.sign = FiniteSumSpec::Sign::periodic;
        cur.expect("*");
    }
    (void)at;

    cur.skip();
    const std::size_t body_at = cur.pos();
    const std::string body = cur.until({"@"});
    if (body.empty()) cur.fail("missing summand", body_at);
    try {
        const Expr e = Expr::parse(body);
        spec.body = e.print();
        spec.convoluted = e.depends_on('n');
    } catch (const Error& e) {
        cur.fail(std::string(e.what()), body_at);
    }
    if (cur.eat("@")) {
        cur.expect("n");
        cur.expect("=");
        const std::size_t n_at = (cur.skip(), cur.pos());
        const std::string nv = cur.until({});
        if (!spec.symbolic_upper) cur.fail("'@ n=' needs the upper bound n", n_at);
        spec.n = complex_at(cur, nv, n_at);
    }
    if (!cur.done()) cur.fail("unexpected trailing text");
    if (spec.convoluted && spec.infinite) cur.fail("an infinite sum cannot depend on n", body_at);
    return spec;
}

FunctionOracle spec_oracle(const FiniteSumSpec& s, std::optional<int> asymptotic_order) {
    if (s.convoluted) throw Error(ErrorKind::configuration, "summand depends on n; use the convoluted form");
    BuiltinParams p;
    p.expression = s.body;
    p.asymptotic_order = asymptotic_order;
    return builtin_oracle(BuiltinKind::custom_composite, p);
}

BivariateOracle spec_bivariate(const FiniteSumSpec& s, std::optional<int> asymptotic_order) {
    return bivariate_oracle(s.body, asymptotic_order);
}

}  // namespace summa
