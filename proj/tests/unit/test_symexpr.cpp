#include <doctest.h>

#include "walker/symexpr/calculus.hpp"
#include "walker/symexpr/eval.hpp"
#include "walker/symexpr/parse.hpp"
#include "walker/symexpr/realize.hpp"
#include "walker/symexpr/zero_test.hpp"

using namespace walker::sym;

namespace {

Expr P(const char* s) { return parse(s); }

bool equal(const Expr& a, const Expr& b) { return normalizes_to_zero(a - b); }

}  // namespace

TEST_CASE("parse builds the expected trees") {
  Expr e = P("-2*exp(b*x)/b^2");
  CHECK(equal(e, Expr(-2) * exp(Expr::param("b") * x()) * pow(Expr::param("b"), -2)));

  Expr w = P("-x^2*alpha(y)");
  CHECK(equal(w, -pow(x(), 2) * Expr::func("alpha", {kY})));

  Expr d = P("f1''(y)");
  REQUIRE(d.kind() == Kind::Func);
  CHECK(d.name() == "f1");
  CHECK(d.node().args == std::vector<int>{kY});
  CHECK(d.node().orders == std::vector<int>{2});

  Expr m = P("f_{xxy}(x,y)");
  REQUIRE(m.kind() == Kind::Func);
  CHECK(m.node().orders == std::vector<int>{2, 1});
}

TEST_CASE("parse reports errors with offsets") {
  try {
    P("1 + * 2");
    FAIL("expected a syntax error");
  } catch (const ParseError& err) {
    CHECK(err.kind() == ParseError::Kind::Syntax);
    CHECK(err.offset() == 4);
  }
  try {
    P("sin(x, y)");
    FAIL("expected an arity error");
  } catch (const ParseError& err) {
    CHECK(err.kind() == ParseError::Kind::Arity);
  }
  CHECK_THROWS_AS(P("(x"), ParseError);
  CHECK_THROWS_AS(P("x^y"), ParseError);
  CHECK_THROWS_AS(P("g(x,x)"), ParseError);
}

TEST_CASE("parse accepts decimals and rational literals") {
  CHECK(equal(P("1.5*x"), Expr(Rational(3, 2)) * x()));
  CHECK(equal(P("2e-3"), Expr(Rational(1, 500))));
  CHECK(equal(P("3/4"), Expr(Rational(3, 4))));
}

TEST_CASE("render round trip") {
  const char* corpus[] = {"-2*exp(b*x)/b^2",       "-x^2*alpha(y)",          "f1''(y)*x - f2'(y)",
                          "sqrt(abs(f3(y)))*t/2",  "sin(y)^2 + cos(2*y)",    "(x + 1)/(x^2 - y)",
                          "p(y)*x^2 + q(y)*x + r(y)", "f_{xxy}(x,y)*exp(-x)", "c*alpha(y)^(3/2)",
                          "4/(k - c*y)^2"};
  for (const char* text : corpus) {
    Expr n = normalize(P(text));
    Expr back = parse(to_string(n));
    CAPTURE(text);
    CAPTURE(to_string(n));
    CHECK(same(normalize(back), n));
  }
}

TEST_CASE("diff") {
  CHECK(equal(diff(P("-2*exp(b*x)/b^2"), kX), P("-2*exp(b*x)/b")));
  CHECK(equal(diff(P("-x^2*alpha(y)"), kY), P("-x^2*alpha'(y)")));
  CHECK(diff(P("alpha'(y)"), kT).is_zero_literal());
  CHECK(equal(diff(P("sqrt(x)"), kX), P("1/(2*sqrt(x))")));
  CHECK(equal(diff(P("abs(x)"), kX), P("x/abs(x)")));
  CHECK(equal(diff(P("sin(x*y)"), kY, 2), P("-x^2*sin(x*y)")));
}

TEST_CASE("substitute") {
  CHECK(equal(substitute(P("f1'(y)"), {{"f1", P("y^2")}}), P("2*y")));
  CHECK(equal(substitute(P("-x^2*alpha(y)"), {{"alpha", Expr(1)}}), P("-x^2")));
  CHECK(equal(substitute(P("-2*exp(b*x)/b^2"), {{"b", Expr(2)}}), P("-exp(2*x)/2")));
  CHECK_THROWS_AS(substitute(P("f1'(y)"), {{"f1", P("x*y")}}), SubstitutionError);
}

TEST_CASE("is_zero") {
  CHECK(is_zero(P("sin(y)^2 + cos(y)^2 - 1")) == Trilean::Zero);
  RuleSet rules{RewriteRule::parse("h''(y) -> -alpha(y)*h(y)")};
  CHECK(is_zero(P("h''(y) + alpha(y)*h(y)"), rules) == Trilean::Zero);
  CHECK(is_zero(P("h''''(y) - alpha(y)^2*h(y) + 2*alpha'(y)*h'(y) + alpha''(y)*h(y)"), rules) == Trilean::Zero);

  ZeroTestResult r = zero_test(P("x*alpha(y)"));
  CHECK(r.verdict == Trilean::NonZero);
  REQUIRE(r.witness.has_value());
  CHECK(std::fabs(r.witness->value) > 1e-9);
}

TEST_CASE("rules for a constrained positive function") {
  RuleSet rules{RewriteRule::parse("alpha'(y) -> c*alpha(y)^(3/2)")};
  ZeroTestOptions opts;
  opts.positive = {"alpha"};
  // d/dy alpha^(-1/2) = -c/2 under the rule.
  CHECK(is_zero(diff(P("alpha(y)^(-1/2)"), kY) + P("c/2"), rules, opts) == Trilean::Zero);
  CHECK(is_zero(P("sqrt(abs(alpha(y)))^2 - alpha(y)"), rules, opts) == Trilean::Zero);
  CHECK_THROWS_AS(RewriteRule::parse("h''(y) -> h''''(y)"), std::invalid_argument);
}

TEST_CASE("abs and sqrt normalization") {
  CHECK(is_zero(P("abs(x)^2 - x^2")) == Trilean::Zero);
  CHECK(is_zero(P("sqrt(x^2*exp(y))^2 - x^2*exp(y)")) == Trilean::Zero);
  CHECK(is_zero(P("abs(-x) - abs(x)")) == Trilean::Zero);
  CHECK(is_zero(P("abs(x) - x")) == Trilean::NonZero);
  CHECK(is_zero(P("exp(x)*exp(-x) - 1")) == Trilean::Zero);
  CHECK(is_zero(P("exp(x + y) - exp(x)*exp(y)")) == Trilean::Zero);
  CHECK(is_zero(P("(x^2 - 1)/(x - 1) - x - 1")) == Trilean::Zero);
}

TEST_CASE("eval_numeric") {
  CHECK(eval_numeric(P("-2*exp(b*x)/b^2"), {0, 0, 0}, {{"b", 1.0}}) == doctest::Approx(-2.0));
  Realizations one;
  one.set("alpha", Expr(1));
  CHECK(eval_numeric(P("-x^2*alpha(y)"), {0, 2, 0}, {}, &one) == doctest::Approx(-4.0));
  Realizations s;
  s.set("f1", P("sin(y)"));
  CHECK(eval_numeric(P("f1'(y)"), {0, 0, 0}, {}, &s) == doctest::Approx(1.0));
  CHECK_THROWS_AS(eval_numeric(P("1/x"), {0, 0, 0}, {}), EvalError);
  CHECK_THROWS_AS(eval_numeric(P("sqrt(x)"), {0, -1, 0}, {}), EvalError);
  CHECK_THROWS_AS(eval_numeric(P("b*x"), {0, 1, 0}, {}), EvalError);
}

// Random expression corpus for the algebraic properties.
namespace {

Expr random_expr(Rng& rng, int depth) {
  const std::uint64_t pick = rng.next() % (depth <= 0 ? 5 : 11);
  switch (pick) {
    case 0:
      return x();
    case 1:
      return y();
    case 2:
      return Expr(rng.grid(-2, 2));
    case 3:
      return Expr::func("g", {kX, kY});
    case 4:
      return Expr::func("a", {kY});
    case 5:
      return random_expr(rng, depth - 1) + random_expr(rng, depth - 1);
    case 6:
      return random_expr(rng, depth - 1) * random_expr(rng, depth - 1);
    case 7:
      return exp(random_expr(rng, depth - 1));
    case 8:
      return sin(random_expr(rng, depth - 1));
    case 9:
      return random_expr(rng, depth - 1) / (Expr(2) + pow(random_expr(rng, depth - 1), 2));
    default:
      return cos(random_expr(rng, depth - 1)) * random_expr(rng, depth - 1);
  }
}

}  // namespace

TEST_CASE("property: idempotence, mixed partials, substitution commutes, zero soundness") {
  Rng rng(20240601);
  ZeroTestOptions opts;
  for (int i = 0; i < 60; ++i) {
    Expr e = random_expr(rng, 3);
    CAPTURE(to_string(e));
    Expr n = normalize(e);
    CHECK(same(normalize(n), n));
    CHECK(normalizes_to_zero(diff(diff(e, kX), kY) - diff(diff(e, kY), kX)));

    Bindings sigma{{"a", P("y^2 + sin(y)")}, {"g", P("x*y - exp(y)")}};
    CHECK(is_zero(substitute(diff(e, kX), sigma) - diff(substitute(e, sigma), kX)) == Trilean::Zero);
    CHECK(is_zero(substitute(diff(e, kY), sigma) - diff(substitute(e, sigma), kY)) == Trilean::Zero);

    // Anything declared Zero must vanish numerically under fresh realizations.
    Expr identity = diff(e * e, kX) - Expr(2) * e * diff(e, kX);
    REQUIRE(is_zero(identity, {}, opts) == Trilean::Zero);
    for (int r = 0; r < 5; ++r) {
      Rng draw = Rng::stream(99, static_cast<std::uint64_t>(i * 5 + r));
      Realizations real;
      std::map<std::string, double> params;
      draw_symbols(symbols_of(identity), {}, draw, &real, &params);
      for (int p = 0; p < 20; ++p) {
        std::array<double, 3> pt{draw.uniform(-1, 1), draw.uniform(-1, 1), draw.uniform(-1, 1)};
        double v = 0;
        try {
          v = eval_numeric(identity, pt, params, &real);
        } catch (const EvalError&) {
          continue;
        }
        double scale = 1 + std::fabs(eval_numeric(diff(e * e, kX), pt, params, &real));
        CHECK(std::fabs(v) < 1e-9 * scale);
      }
    }
  }
}

TEST_CASE("Rng::grid returns reduced fractions") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const Rational q = rng.grid(-2, 2);
    Rational c = q;
    c.canonicalize();
    CHECK(q.get_num() == c.get_num());
    CHECK(q.get_den() == c.get_den());
    CHECK(q >= -2);
    CHECK(q <= 2);
  }
}
