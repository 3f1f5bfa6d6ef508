#include <doctest.h>

#include "../support/corpus.hpp"
#include "walker/geometry/curvature.hpp"
#include "walker/symexpr/parse.hpp"

using namespace walker;
using namespace walker::geo;
using sym::kT;
using sym::kX;
using sym::kY;
using sym::parse;
using sym::Trilean;

namespace {

bool equal(const WalkerManifold& w, const Expr& a, const Expr& b) { return w.simplify(a - b).is_zero_literal(); }

bool tensors_equal(const Tensor& a, const Tensor& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!sym::normalizes_to_zero(a.component(i) - b.component(i))) return false;
  }
  return true;
}

WalkerManifold nb(int b) {
  ManifoldOptions o;
  o.params["b"] = sym::Rational(b);
  return build_manifold("-2*exp(b*x)/b^2", o);
}

}  // namespace

TEST_CASE("build_manifold validation") {
  WalkerManifold w = nb(1);
  CHECK(w.curvature_status() == Trilean::NonZero);
  CHECK_THROWS_WITH_AS(build_manifold("x*y"), doctest::Contains("flat"), ManifoldError);
  CHECK_THROWS_WITH_AS(build_manifold("t*x"), doctest::Contains("depends on t"), ManifoldError);
  CHECK_THROWS_AS(build_manifold("x^"), sym::ParseError);
}

TEST_CASE("metric and inverse") {
  WalkerManifold w = build_manifold("F(x,y)");
  MetricPair mp = metric_and_inverse(w);
  CHECK(mp.metric(kT, kY).is_one_literal());
  CHECK(mp.metric(kX, kX).is_one_literal());
  CHECK(same(mp.metric(kY, kY), parse("F(x,y)")));
  CHECK(equal(w, mp.inverse(kT, kT), parse("-F(x,y)")));
  CHECK(mp.inverse(kT, kY).is_one_literal());
  CHECK(mp.inverse(kY, kT).is_one_literal());
  CHECK(mp.inverse(kX, kX).is_one_literal());
  CHECK(mp.inverse(kY, kY).is_zero_literal());
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Expr v;
      for (int k = 0; k < 3; ++k) v = v + mp.metric(i, k) * mp.inverse(k, j);
      CHECK(equal(w, v, Expr(i == j ? 1 : 0)));
    }
  }
}

TEST_CASE("christoffel examples") {
  WalkerManifold cw = build_manifold("-x^2");
  Tensor g = christoffel(cw);
  CHECK(equal(cw, g(kT, kX, kY), parse("-x")));
  CHECK(equal(cw, g(kX, kY, kY), parse("x")));
  int nonzero = 0;
  for (std::size_t i = 0; i < g.size(); ++i) nonzero += !g.component(i).is_zero_literal();
  CHECK(nonzero == 3);  // Gamma^t_xy, Gamma^t_yx, Gamma^x_yy

  WalkerManifold n = build_manifold("-2*exp(b*x)/b^2");
  CHECK(equal(n, christoffel(n)(kT, kX, kY), parse("-exp(b*x)/b")));
}

TEST_CASE("curvature examples") {
  WalkerManifold w = nb(1);
  CurvatureSet c = curvature_tensors(w);
  CHECK(equal(w, c.omega(kX), Expr(1)));
  CHECK(c.omega(kY).is_zero_literal());

  WalkerManifold b2 = build_manifold("-2*exp(b*x)/b^2");
  CHECK(equal(b2, curvature_tensors(b2).omega(kX), parse("b")));

  WalkerManifold cw = build_manifold("-x^2");
  CurvatureSet s = curvature_tensors(cw);
  CHECK(s.nabla_riemann.all_zero_literals());
  CHECK(s.omega.all_zero_literals());
  CHECK(equal(cw, s.riemann(kT, kX, kY, kX), Expr(-1)));
}

TEST_CASE("ricci examples") {
  WalkerManifold w = nb(1);
  RicciPair r = ricci_and_scalar(w);
  CHECK(equal(w, r.ricci(kY, kY), parse("exp(x)")));
  CHECK(r.scalar.is_zero_literal());
  WalkerManifold cw = build_manifold("-x^2");
  CHECK(equal(cw, ricci_and_scalar(cw).ricci(kY, kY), Expr(1)));
}

TEST_CASE("conformal flatness") {
  CHECK(is_conformally_flat(build_manifold("p(y)*x^2 + q(y)*x + r(y)")) == Trilean::Zero);
  CHECK(is_conformally_flat(build_manifold("-2*exp(b*x)/b^2")) == Trilean::NonZero);
  CHECK(is_conformally_flat(build_manifold("-x^2*alpha(y)")) == Trilean::Zero);
}

TEST_CASE("tensor rendering") {
  WalkerManifold cw = build_manifold("-x^2");
  auto lines = curvature_tensors(cw).riemann.render("R");
  REQUIRE(!lines.empty());
  CHECK(lines.front() == "R^t_xyx = -1");
  auto rho = ricci_and_scalar(nb(1)).ricci.render("rho");
  REQUIRE(rho.size() == 1);
  CHECK(rho[0] == "rho_yy = exp(x)");
}

TEST_CASE("property: corpus identities") {
  for (const auto& entry : testing::geometry_corpus()) {
    CAPTURE(entry.name);
    WalkerManifold w = build_manifold(entry.f, entry.options);
    Geometry geo = Geometry::build(w);
    CHECK(tensors_equal(geo.gamma, closed_form::christoffel(w)));
    CHECK(tensors_equal(geo.curvature.riemann, closed_form::riemann(w)));
    CHECK(tensors_equal(geo.curvature.nabla_riemann, closed_form::nabla_riemann(w)));
    CHECK(tensors_equal(geo.ricci.ricci, closed_form::ricci(w)));
    CHECK(geo.ricci.scalar.is_zero_literal());
    CHECK(nabla_metric(w).all_zero_literals());
    // Torsion-free, first Bianchi, recurrence, degenerate Ricci.
    for (int k = 0; k < 3; ++k) {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          CHECK(w.is_zero(geo.gamma(k, i, j) - geo.gamma(k, j, i)) == Trilean::Zero);
          for (int l = 0; l < 3; ++l) {
            const Tensor& r = geo.curvature.riemann;
            CHECK(w.is_zero(r(k, i, j, l) + r(k, j, l, i) + r(k, l, i, j)) == Trilean::Zero);
            for (int m = 0; m < 3; ++m) {
              Expr defect = geo.curvature.nabla_riemann(k, i, j, l, m) -
                            geo.curvature.omega(m) * geo.curvature.riemann(k, i, j, l);
              CHECK(w.is_zero(defect) == Trilean::Zero);
            }
          }
        }
      }
      CHECK(geo.ricci.ricci(kT, k).is_zero_literal());
      CHECK(geo.ricci.ricci(kX, k).is_zero_literal());
    }
  }
}
