#include "summa/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace summa {

struct Expr::Node {
    enum Kind { num, var, add, sub, mul, div, pow, neg, call } kind;
    Scalar value = 0;
    char var_name = 0;
    std::string fn;
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodeP = std::shared_ptr<const Expr::Node>;
constexpr double kEulerGamma = 0.57721566490153286061;

NodeP make(Expr::Node n) { return std::make_shared<const Expr::Node>(std::move(n)); }

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodeP parse_all() {
        NodeP e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return e;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::parse, msg + " at column " + std::to_string(pos_ + 1) + "\n  " + s_ + "\n  " +
                                          std::string(pos_, ' ') + "^");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodeP expr() {
        NodeP l = term();
        for (;;) {
            if (eat('+')) l = make({Expr::Node::add, 0, 0, {}, l, term()});
            else if (eat('-')) l = make({Expr::Node::sub, 0, 0, {}, l, term()});
            else return l;
        }
    }

    NodeP term() {
        NodeP l = unary();
        for (;;) {
            if (eat('*')) l = make({Expr::Node::mul, 0, 0, {}, l, unary()});
            else if (eat('/')) l = make({Expr::Node::div, 0, 0, {}, l, unary()});
            else return l;
        }
    }

    NodeP unary() {
        if (eat('-')) return make({Expr::Node::neg, 0, 0, {}, unary(), nullptr});
        if (eat('+')) return unary();
        return power();
    }

    NodeP power() {
        NodeP base = primary();
        if (eat('^')) return make({Expr::Node::pow, 0, 0, {}, base, unary()});
        return base;
    }

    NodeP primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodeP e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = s_.c_str() + pos_;
            char* end = nullptr;
            double v = std::strtod(begin, &end);
            if (end == begin) fail("malformed number");
            pos_ += size_t(end - begin);
            if (pos_ < s_.size() && s_[pos_] == 'i' &&
                (pos_ + 1 >= s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
                ++pos_;
                return make({Expr::Node::num, Scalar(0, v), 0, {}, nullptr, nullptr});
            }
            return make({Expr::Node::num, v, 0, {}, nullptr, nullptr});
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            const std::string id = s_.substr(start, pos_ - start);
            if (eat('(')) {
                static const char* known[] = {"exp", "log", "sqrt", "sin", "cos", "lgamma", "logfact", "H", "logG"};
                bool ok = false;
                for (auto* k : known) ok = ok || id == k;
                if (!ok) {
                    pos_ = start;
                    fail("unknown function '" + id + "'");
                }
                NodeP arg = expr();
                if (!eat(')')) fail("expected ')'");
                return make({Expr::Node::call, 0, 0, id, arg, nullptr});
            }
            if (id == "k" || id == "n") return make({Expr::Node::var, 0, id[0], {}, nullptr, nullptr});
            if (id == "pi") return make({Expr::Node::num, std::numbers::pi, 0, {}, nullptr, nullptr});
            if (id == "e") return make({Expr::Node::num, std::numbers::e, 0, {}, nullptr, nullptr});
            if (id == "egamma") return make({Expr::Node::num, std::numbers::egamma, 0, {}, nullptr, nullptr});
            if (id == "i") return make({Expr::Node::num, Scalar(0, 1), 0, {}, nullptr, nullptr});
            pos_ = start;
            fail("unknown identifier '" + id + "'");
        }
        fail("unexpected character");
    }
};

std::vector<Scalar> outer_series(const std::string& fn, Scalar u0, int R) {
    std::vector<Scalar> c(R + 1);
    if (fn == "lgamma" || fn == "logfact") {
        const Scalar z = fn == "logfact" ? u0 + 1.0 : u0;
        c[0] = lgamma(z);
        for (int j = 1; j <= R; ++j) c[j] = polygamma(j - 1, z) / factorial(j);
    } else if (fn == "H") {
        c[0] = polygamma(0, u0 + 1.0) + kEulerGamma;
        for (int j = 1; j <= R; ++j) c[j] = polygamma(j, u0 + 1.0) / factorial(j);
    } else if (fn == "logG") {
        for (int j = 0; j <= R; ++j) c[j] = log_barnes_g_derivative(j, u0) / factorial(j);
    }
    return c;
}

Jet eval_node(const Expr::Node& n, Scalar k, Scalar nv, int R, char var) {
    using K = Expr::Node;
    switch (n.kind) {
        case K::num: return jet::constant(n.value, R);
        case K::var: {
            const Scalar x = n.var_name == 'k' ? k : nv;
            return n.var_name == var ? jet::variable(x, R) : jet::constant(x, R);
        }
        case K::add: return jet::add(eval_node(*n.a, k, nv, R, var), eval_node(*n.b, k, nv, R, var));
        case K::sub: return jet::sub(eval_node(*n.a, k, nv, R, var), eval_node(*n.b, k, nv, R, var));
        case K::mul: return jet::mul(eval_node(*n.a, k, nv, R, var), eval_node(*n.b, k, nv, R, var));
        case K::div: return jet::div(eval_node(*n.a, k, nv, R, var), eval_node(*n.b, k, nv, R, var));
        case K::neg: return jet::neg(eval_node(*n.a, k, nv, R, var));
        case K::pow: return jet::pow(eval_node(*n.a, k, nv, R, var), eval_node(*n.b, k, nv, R, var));
        case K::call: {
            Jet u = eval_node(*n.a, k, nv, R, var);
            if (n.fn == "exp") return jet::exp(u);
            if (n.fn == "log") return jet::log(u);
            if (n.fn == "sqrt") return jet::sqrt(u);
            if (n.fn == "sin") return jet::sin(u);
            if (n.fn == "cos") return jet::cos(u);
            return jet::compose(outer_series(n.fn, u[0], R), u);
        }
    }
    throw Error(ErrorKind::configuration, "bad expression node");
}

bool node_depends(const Expr::Node& n, char v) {
    if (n.kind == Expr::Node::var) return n.var_name == v;
    return (n.a && node_depends(*n.a, v)) || (n.b && node_depends(*n.b, v));
}

int prec(const Expr::Node& n) {
    switch (n.kind) {
        case Expr::Node::add:
        case Expr::Node::sub: return 1;
        case Expr::Node::mul:
        case Expr::Node::div: return 2;
        case Expr::Node::neg: return 3;
        case Expr::Node::pow: return 4;
        default: return 5;
    }
}

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string print_node(const Expr::Node& n) {
    using K = Expr::Node;
    auto wrap = [](const Expr::Node& c, bool need) { return need ? "(" + print_node(c) + ")" : print_node(c); };
    switch (n.kind) {
        case K::num: {
            const double re = n.value.real(), im = n.value.imag();
            if (im == 0) return re < 0 ? "(" + fmt_num(re) + ")" : fmt_num(re);
            if (re == 0) return "(" + fmt_num(im) + "i)";
            return "(" + fmt_num(re) + (im < 0 ? "-" : "+") + fmt_num(std::abs(im)) + "i)";
        }
        case K::var: return std::string(1, n.var_name);
        case K::add: return print_node(*n.a) + "+" + wrap(*n.b, prec(*n.b) < 1);
        case K::sub: return print_node(*n.a) + "-" + wrap(*n.b, prec(*n.b) <= 1);
        case K::mul: return wrap(*n.a, prec(*n.a) < 2) + "*" + wrap(*n.b, prec(*n.b) < 2);
        case K::div: return wrap(*n.a, prec(*n.a) < 2) + "/" + wrap(*n.b, prec(*n.b) <= 2);
        case K::neg: return "-" + wrap(*n.a, prec(*n.a) < 3);
        case K::pow: return wrap(*n.a, prec(*n.a) <= 4) + "^" + wrap(*n.b, prec(*n.b) < 3);
        case K::call: return n.fn + "(" + print_node(*n.a) + ")";
    }
    return "?";
}

}  // namespace

Expr Expr::parse(const std::string& text) { return Expr(Parser(text).parse_all()); }

Expr Expr::variable(char v) { return Expr(make({Node::var, 0, v, {}, nullptr, nullptr})); }

Expr Expr::number(Scalar c) { return Expr(make({Node::num, c, 0, {}, nullptr, nullptr})); }

Jet Expr::eval(Scalar k, Scalar n, int R, char var) const { return eval_node(*root_, k, n, R, var); }

Scalar Expr::value(Scalar k, Scalar n) const { return eval_node(*root_, k, n, 0, 'k')[0]; }

bool Expr::depends_on(char var) const { return node_depends(*root_, var); }

std::string Expr::print() const { return print_node(*root_); }

Scalar parse_complex(const std::string& text) {
    Expr e = Expr::parse(text);
    if (e.depends_on('k') || e.depends_on('n'))
        throw Error(ErrorKind::parse, "expected a complex literal, got an expression in k or n: " + text);
    Scalar v = e.value(0.0, 0.0);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw Error(ErrorKind::parse, "malformed complex literal: " + text);
    return v;
}

BivariateOracle bivariate_oracle(const std::string& text, std::optional<int> asymptotic_order) {
    Expr e = Expr::parse(text);
    return BivariateOracle(
        e.print(), [e](Scalar k, Scalar n, int R) { return e.eval(k, n, R, 'k'); },
        [e](Scalar k, Scalar n, int R) { return e.eval(k, n, R, 'n'); }, asymptotic_order);
}

}  // namespace summa
