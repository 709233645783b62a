#include <doctest.h>

#include <cmath>
#include <vector>

#include "rsgame/errors.hpp"
#include "rsgame/expr.hpp"

using namespace rsgame;

namespace {
double ev(const std::string& src, std::vector<double> x = {}, std::vector<double> a = {}) {
    return parse(src).eval(x.data(), static_cast<int>(x.size()), a.data(),
                           static_cast<int>(a.size()));
}
}  // namespace

TEST_SUITE("expr") {

TEST_CASE("number literals and sign") {
    CHECK(ev("42") == 42.0);
    CHECK(ev("-3.5") == -3.5);
    CHECK(ev("1e-3") == 1e-3);
    CHECK(ev("2.5e2") == 250.0);
}

TEST_CASE("arithmetic with standard precedence") {
    CHECK(ev("1 + 2*3") == 7.0);
    CHECK(ev("(1 + 2)*3") == 9.0);
    CHECK(ev("2 - 3 - 4") == -5.0);  // left assoc
    CHECK(ev("12 / 3 / 2") == 2.0);
    CHECK(ev("-2^2") == -4.0);  // unary minus binds looser than power
    CHECK(ev("2^3^2") == 512.0);  // power is right assoc
    CHECK(ev("0^0") == 1.0);
}

TEST_CASE("variables bind by index") {
    CHECK(ev("x0", {3.0}) == 3.0);
    CHECK(ev("x1 - x0", {1.0, 5.0}) == 4.0);
    CHECK(ev("a0*x0", {2.0}, {7.0}) == 14.0);
    CHECK_THROWS_AS(ev("x1", {1.0}), UnboundVariable);
    CHECK_THROWS_AS(ev("a0", {1.0}), UnboundVariable);
}

TEST_CASE("functions") {
    CHECK(ev("exp(0)") == 1.0);
    CHECK(ev("log(exp(2))") == doctest::Approx(2.0));
    CHECK(ev("sqrt(16)") == 4.0);
    CHECK(ev("abs(-3)") == 3.0);
    CHECK(ev("tanh(0)") == 0.0);
    CHECK(ev("sin(0)") == 0.0);
    CHECK(ev("cos(0)") == 1.0);
    CHECK(ev("min(2, 3)") == 2.0);
    CHECK(ev("max(2, 3)") == 3.0);
    CHECK(ev("min(1+1, 1*3)") == 2.0);
}

TEST_CASE("hand-checked compound expressions") {
    // values computed by hand, not by the evaluator under test
    CHECK(ev("0.2*(x0 - a0)^2", {1.5}, {0.5}) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(ev("exp(-x0^2/2)", {2.0}) == doctest::Approx(std::exp(-2.0)));
    CHECK(ev("max(0, x0) + min(0, x0)", {-3.25}) == -3.25);
    CHECK(ev("1/(1 + x0^2)", {3.0}) == doctest::Approx(0.1));
}

TEST_CASE("domain errors at evaluation time") {
    CHECK_THROWS_AS(ev("log(-1)"), DomainError);
    CHECK_THROWS_AS(ev("sqrt(-4)"), DomainError);
    CHECK_THROWS_AS(ev("1/(x0 - 1)", {1.0}), DomainError);
    CHECK_THROWS_AS(ev("(-1)^0.5"), DomainError);
}

TEST_CASE("syntax errors carry a byte offset") {
    CHECK_THROWS_AS(static_cast<void>(parse("1 +")), SyntaxError);
    CHECK_THROWS_AS(static_cast<void>(parse("(1")), SyntaxError);
    CHECK_THROWS_AS(static_cast<void>(parse("1 2")), SyntaxError);
    CHECK_THROWS_AS(static_cast<void>(parse("")), SyntaxError);
    CHECK_THROWS_AS(static_cast<void>(parse("min(1)")), SyntaxError);
    try {
        static_cast<void>(parse("1 + @"));
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.offset == 4);
    }
}

TEST_CASE("unknown identifiers are rejected at parse time") {
    CHECK_THROWS_AS(static_cast<void>(parse("sinh(1)")), UnknownIdentifier);
    CHECK_THROWS_AS(static_cast<void>(parse("y0 + 1")), UnknownIdentifier);
    CHECK_THROWS_AS(static_cast<void>(parse("xx")), UnknownIdentifier);
}

TEST_CASE("arity introspection and validate") {
    const Expr e = parse("x1*a0 + x0");
    CHECK(e.max_x_arity() == 2);
    CHECK(e.max_a_arity() == 1);
    CHECK_NOTHROW(e.validate(2, 1));
    CHECK_THROWS_AS(e.validate(1, 1), UnknownIdentifier);
    CHECK_THROWS_AS(e.validate(2, 0), UnknownIdentifier);
    CHECK(parse("3.5").max_x_arity() == 0);
}

TEST_CASE("print is parseable and evaluates identically") {
    const char* sources[] = {"1 + 2*x0", "exp(-x0^2/2)*max(a0, 0.5)", "min(x0, x1) - 3/x0",
                             "-x0^2"};
    for (const char* s : sources) {
        const Expr e = parse(s);
        const Expr round = parse(e.print());
        const double x[2] = {0.7, -1.3}, a[1] = {0.25};
        CHECK(e.eval(x, 2, a, 1) == round.eval(x, 2, a, 1));
    }
}

TEST_CASE("eval is reentrant across many nodes") {
    // flat storage with an explicit stack, not recursion; deep chain is fine
    std::string src = "x0";
    for (int i = 0; i < 200; ++i) src = "(" + src + " + 1)";
    CHECK(ev(src, {0.0}) == 200.0);
}

}  // TEST_SUITE
