#include <doctest.h>

#include <cmath>

#include "../support/corpus.hpp"
#include "walker/oracle/oracle.hpp"
#include "walker/symexpr/parse.hpp"

using namespace walker;
using namespace walker::oracle;
using lie::VectorField;

namespace {

// Flat index of ^k_ij / _ij style components.
std::size_t ix(std::initializer_list<int> idx) {
  std::size_t k = 0;
  for (int v : idx) k = k * 3 + static_cast<std::size_t>(v);
  return k;
}

}  // namespace

TEST_CASE("fd_tensors: closed-form spot checks") {
  auto w = geo::build_manifold("-x^2");
  auto r = realize(w, {}, 1);
  auto fd = fd_tensors(metric_evaluator(r), {0, 1, 0});
  CHECK(fd.christoffel.data[ix({0, 1, 2})] == doctest::Approx(-1).epsilon(1e-8));

  auto n = geo::build_manifold("-2*exp(x)");
  auto rn = realize(n, {}, 1);
  auto fn = fd_tensors(metric_evaluator(rn), {0, 0, 0});
  CHECK(std::fabs(fn.ricci.data[ix({2, 2})] - 1) < 1e-8);
  CHECK(std::fabs(fn.scalar) < 1e-8);
}

TEST_CASE("fd_tensors: vanishing scalar curvature across the corpus") {
  for (const auto& e : walker::testing::geometry_corpus()) {
    if (!e.options.rules.empty()) continue;
    auto w = geo::build_manifold(e.f, e.options);
    auto r = realize(w, {}, 5);
    SamplePlan plan;
    plan.count = 5;
    for (const auto& p : plan.generate(r)) CHECK(std::fabs(fd_tensors(metric_evaluator(r), p).scalar) < 1e-8);
  }
}

TEST_CASE("fd_tensors: singular metric is an error") {
  MetricFn zero = [](const RPoint&) { return Matrix{}; };
  CHECK_THROWS_AS(fd_tensors(zero, {0, 0, 0}), OracleError);
}

TEST_CASE("fd_lie: examples") {
  auto w = geo::build_manifold("-x^2");
  auto r = realize(w, {}, 1);
  auto dt = fd_lie(LieKind::Metric, r, VectorField::parse("1", "0", "0"), {0.3, 1, -0.2});
  CHECK(dt.max_abs() < 1e-10);
  auto ydt = fd_lie(LieKind::Metric, r, VectorField::parse("y", "0", "0"), {0.3, 1, -0.2});
  CHECK(ydt.data[ix({2, 2})] == doctest::Approx(2).epsilon(1e-8));
  auto tdt = fd_lie(LieKind::Riemann, r, VectorField::parse("t", "0", "0"), {0, 1, 0});
  CHECK(tdt.max_abs() == doctest::Approx(1).epsilon(1e-6));
}

TEST_CASE("fd_lie agrees with the symbolic Lie derivatives") {
  auto w = geo::build_manifold("sin(x)*y + 2*x^2 + cos(y)");
  auto g = geo::Geometry::build(w);
  auto x = VectorField::parse("u(t,x,y)", "x*y", "exp(t/3)");
  auto r = realize(w, {x}, 9);
  SamplePlan plan;
  plan.count = 10;
  for (const auto& p : plan.generate(r)) {
    CHECK(relative_gap(fd_lie(LieKind::Metric, r, x, p), evaluate(lie::lie_metric(w, g, x), r, p)) < 1e-6);
    CHECK(relative_gap(fd_lie(LieKind::Connection, r, x, p), evaluate(lie::lie_connection(w, g, x), r, p)) < 1e-6);
    CHECK(relative_gap(fd_lie(LieKind::Riemann, r, x, p), evaluate(lie::lie_riemann(w, g, x), r, p)) < 1e-6);
    CHECK(relative_gap(fd_lie(LieKind::Ricci, r, x, p), evaluate(lie::lie_ricci(w, g, x), r, p)) < 1e-6);
  }
}

TEST_CASE("SamplePlan: deterministic and respects exclusions") {
  auto w = geo::build_manifold("x^3 + y*x^2 - y^3");
  auto r = realize(w, {}, 2);
  SamplePlan plan;
  plan.seed = 42;
  plan.count = 50;
  auto a = plan.generate(r);
  auto b = plan.generate(r);
  CHECK(a == b);
  const auto fxx = w.f_d(2, 0);
  for (const auto& p : a) {
    CHECK(std::fabs(sym::eval_numeric(fxx, p, {})) >= 0.1);
    for (double c : p) CHECK(std::fabs(c) <= 2);
  }
  plan.seed = 43;
  CHECK(plan.generate(r) != a);
}

TEST_CASE("SamplePlan: positivity guards and rule consistency") {
  geo::ManifoldOptions o;
  o.positive = {"alpha"};
  o.params["c"] = sym::Rational(1, 2);
  o.rules = {sym::RewriteRule::parse("alpha'(y) -> c*alpha(y)^(3/2)")};
  auto w = geo::build_manifold("-x^2*alpha(y)", o);
  SamplePlan plan;
  plan.count = 20;
  auto good = realize(w, {}, 1, {{"alpha", sym::parse("4/(3 - y/2)^2")}});
  CHECK(plan.generate(good).size() == 20);
  // A random positive alpha does not solve alpha' = c alpha^(3/2).
  auto bad = realize(w, {}, 1);
  CHECK_THROWS_AS(plan.generate(bad), OracleError);
  // Sign-changing guard: the realization must be positive at every point.
  auto neg = realize(w, {}, 1, {{"alpha", sym::parse("y")}});
  for (const auto& g : neg.guards) CHECK(sym::to_string(g) == "y");
}

TEST_CASE("SamplePlan: impossible exclusion is an error") {
  auto w = geo::build_manifold("x^2/100");
  auto r = realize(w, {}, 1);
  SamplePlan plan;
  plan.count = 3;
  CHECK_THROWS_AS(plan.generate(r), OracleError);
}

TEST_CASE("flow_pullback_check: Killing, homothetic and affine fields") {
  auto w = geo::build_manifold("-x^2");
  const Point p{0.4, -0.3, 0.7};
  auto k = VectorField::parse("sin(y)*x", "cos(y)", "0");
  CHECK(flow_pullback_check(realize(w, {k}, 1), k, p) < 1e-6);
  auto h = VectorField::parse("2*t", "x", "0");
  FlowOptions fo;
  fo.eta = 2;
  CHECK(flow_pullback_check(realize(w, {h}, 1), h, p, fo) < 1e-6);
  auto a = VectorField::parse("y", "0", "0");
  CHECK(flow_pullback_check(realize(w, {a}, 1), a, p) == doctest::Approx(0.02).epsilon(0.1));
  FlowOptions far;
  far.box = 0.5;
  CHECK_THROWS_AS(flow_pullback_check(realize(w, {a}, 1), a, p, far), OracleError);
}
