#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "summa/descriptor.hpp"

using namespace summa;

namespace {

std::string parse_error(const std::string& text) {
    try {
        parse_descriptor(text);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::parse);
        return e.what();
    }
    return {};
}

// column of the caret in a diagnostic, relative to the echoed input
long caret_column(const std::string& msg) {
    const auto nl = msg.rfind('\n');
    if (nl == std::string::npos) return -1;
    return long(msg.find('^', nl)) - long(nl + 1) - 2;
}

}  // namespace

TEST_CASE("harmonic at one half") {
    const auto s = parse_descriptor("sum k=1..n of 1/k @ n=0.5");
    CHECK(s.sign == FiniteSumSpec::Sign::none);
    CHECK(s.a == Scalar(1));
    CHECK(s.symbolic_upper);
    REQUIRE(s.n);
    CHECK(*s.n == Scalar(0.5));
    CHECK(!s.convoluted);
    CHECK(!s.infinite);
    CHECK(std::abs(spec_oracle(s).value(4.0) - 0.25) < 1e-15);
}

TEST_CASE("alternating sign") {
    const auto s = parse_descriptor("sum k=1..n of alt*log(k) @ n=0.5");
    CHECK(s.sign == FiniteSumSpec::Sign::alternating);
    CHECK(s.angle() == std::numbers::pi);
    CHECK(std::abs(spec_oracle(s).value(std::exp(1.0)) - 1.0) < 1e-15);
}

TEST_CASE("convoluted body") {
    const auto s = parse_descriptor("sum k=1..n of log(1+k/n) @ n=2");
    CHECK(s.convoluted);
    CHECK_THROWS_AS(spec_oracle(s), Error);
    CHECK(std::abs(spec_bivariate(s).value(1.0, 2.0) - std::log(1.5)) < 1e-15);
}

TEST_CASE("other sign specs and bounds") {
    const auto t = parse_descriptor("sum k=0..inf of theta=pi/3*k^2");
    CHECK(t.sign == FiniteSumSpec::Sign::theta);
    CHECK(t.theta == doctest::Approx(std::numbers::pi / 3));
    CHECK(t.infinite);
    CHECK(t.a == Scalar(0));

    const auto p = parse_descriptor("sum k=1..inf of period:[0,1,0,-1]*1/k");
    CHECK(p.sign == FiniteSumSpec::Sign::periodic);
    REQUIRE(p.period.size() == 4);
    CHECK(p.period[3] == Scalar(-1));

    const auto c = parse_descriptor("sum k=1..1.5+0.5i of sqrt(k)");
    CHECK(!c.symbolic_upper);
    REQUIRE(c.n);
    CHECK(*c.n == Scalar(1.5, 0.5));
}

TEST_CASE("canonical form round-trips") {
    for (const char* text : {"sum k=1..n of 1/k @ n=0.5", "sum k=1..n of alt*log(k) @ n=0.5",
                             "sum k=1..n of log(1+k/n) @ n=2", "sum k=0..inf of theta=pi/3*k^2",
                             "sum k=1..inf of period:[0,1,0,-1]*1/k", "sum k=1..1.5+0.5i of sqrt(k)",
                             "sum k=0.5..n of k*exp(-k) @ n=-0.25-2i", "sum  k = 2 .. n  of  k ^ 3"}) {
        INFO(text);
        const auto s = parse_descriptor(text);
        const auto c = s.canonical();
        const auto again = parse_descriptor(c);
        CHECK(again == s);
        CHECK(again.canonical() == c);
    }
}

TEST_CASE("complex literal formatting") {
    CHECK(format_complex(0.5) == "0.5");
    CHECK(format_complex(Scalar(1.5, 0.5)) == "1.5+0.5i");
    CHECK(format_complex(Scalar(0, -2)) == "-2i");
    CHECK(format_complex(0.1) == "0.1");
    const double third = 1.0 / 3;
    CHECK(std::strtod(format_complex(third).c_str(), nullptr) == third);
}

TEST_CASE("diagnostics carry a caret") {
    {
        const auto m = parse_error("sum k=1..n of 1/k @ n=0.5+i+");
        CHECK(m.find("malformed complex literal") != std::string::npos);
        CHECK(caret_column(m) == 22);
    }
    {
        const auto m = parse_error("sum k=1..n of period:0,1*1/k");
        CHECK(m.find("bracketed") != std::string::npos);
        CHECK(caret_column(m) == 21);
    }
    {
        const auto m = parse_error("sum k=1..n of period:[]*1/k");
        CHECK(m.find("periodic") != std::string::npos);
    }
    {
        const auto m = parse_error("sum k=x..n of 1/k");
        CHECK(caret_column(m) == 6);
    }
    CHECK(parse_error("sum k=1..n of frob(k)").find("frob") != std::string::npos);
    CHECK(!parse_error("sum k=1..inf of log(1+k/n)").empty());
    CHECK(!parse_error("sum k=1..3 of 1/k @ n=2").empty());
    CHECK(!parse_error("sum k=1..n of theta=1+2i*k").empty());
    CHECK(!parse_error("prod k=1..n of k").empty());
    CHECK(!parse_error("sum k=1..n of ").empty());
}
