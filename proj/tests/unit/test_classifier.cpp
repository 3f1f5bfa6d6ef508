#include <doctest.h>

#include <cmath>

#include "walker/classifier/systems.hpp"
#include "walker/classifier/verify.hpp"
#include "walker/symexpr/parse.hpp"

using namespace walker;
using cls::Level;
using cls::Outcome;
using lie::VectorField;

namespace {

geo::WalkerManifold cw(int eps) { return geo::build_manifold(eps > 0 ? "-x^2" : "x^2"); }

}  // namespace

TEST_CASE("classify: Killing field of N_1") {
  auto w = geo::build_manifold("-2*exp(x)");
  auto r = cls::classify(w, VectorField::parse("t", "2", "-y"));
  CHECK(r.at(Level::Killing).outcome == Outcome::Holds);
  CHECK(r.strongest() == Level::Killing);
  CHECK(r.decided());
  for (Level l : cls::kLevels) CHECK(r.holds(l));
}

TEST_CASE("classify: homothety of CW_{+1}") {
  auto r = cls::classify(cw(1), VectorField::parse("2*t", "x", "0"));
  CHECK(r.at(Level::Killing).outcome == Outcome::Fails);
  CHECK(r.at(Level::Homothetic).outcome == Outcome::Holds);
  REQUIRE(r.eta);
  CHECK(sym::to_string(*r.eta) == "2");
  CHECK(r.proper(Level::Homothetic));
}

TEST_CASE("classify: y d_t is affine, not homothetic") {
  for (const char* f : {"-x^2", "-2*exp(x)", "sin(x)*y + 2*x^2"}) {
    auto r = cls::classify(geo::build_manifold(f), VectorField::parse("y", "0", "0"));
    CHECK(r.at(Level::Affine).outcome == Outcome::Holds);
    const auto& h = r.at(Level::Homothetic);
    REQUIRE(h.outcome == Outcome::Fails);
    REQUIRE(h.witness);
    CHECK(h.witness->component == "(L_X g - eta g)_yy");
    CHECK(h.witness->value == doctest::Approx(2));
    CHECK(r.proper(Level::Affine));
  }
}

TEST_CASE("classify: Weyl is trivial and hierarchy is respected") {
  auto r = cls::classify(cw(-1), VectorField::parse("t", "0", "0"));
  CHECK(r.at(Level::Weyl).outcome == Outcome::Holds);
  CHECK(r.at(Level::Weyl).note == "trivial in dimension three");
  CHECK(r.at(Level::Ricci).outcome == Outcome::Holds);
  CHECK(r.at(Level::Curvature).outcome == Outcome::Fails);
  CHECK(!r.inconsistent);
  CHECK(r.proper(Level::Ricci));
}

TEST_CASE("classify: non-constant eta is not homothetic") {
  // L_X g = eta(x) g would need a constant factor.
  auto r = cls::classify(cw(1), VectorField::parse("x*t", "x^2/2", "0"));
  CHECK(r.at(Level::Homothetic).outcome == Outcome::Fails);
}

TEST_CASE("classify: rescaling invariance") {
  auto w = geo::build_manifold("x^3 + y*x^2 - y^3");
  for (auto x : {VectorField::parse("y", "0", "0"), VectorField::parse("u(t,x,y)", "0", "0"),
                 VectorField::parse("g(y)", "0", "0"), VectorField::parse("t", "x", "y")}) {
    auto a = cls::classify(w, x);
    auto b = cls::classify(w, sym::Expr(-3) * x);
    for (Level l : cls::kLevels) CHECK(a.at(l).outcome == b.at(l).outcome);
    REQUIRE(a.eta);
    REQUIRE(b.eta);
    CHECK(sym::normalizes_to_zero(*b.eta + sym::Expr(3) * *a.eta));
  }
}

TEST_CASE("classify: level names round-trip") {
  for (Level l : cls::kLevels) CHECK(cls::parse_level(cls::level_key(l)) == l);
  CHECK(cls::parse_level("matter") == Level::Ricci);
  CHECK(!cls::parse_level("conformal"));
}

TEST_CASE("residual_systems: examples") {
  auto w = cw(1);
  auto eta = sym::parse("eta");
  auto s = cls::residual_systems(w, VectorField::parse("0", "x", "0"), eta);
  CHECK(sym::normalizes_to_zero(s.homothety.equations[1].value - sym::parse("1 - eta/2")));

  auto r = cls::residual_systems(w, VectorField::parse("u(t,x,y)", "v(t,x,y)", "g(y)"), sym::Expr());
  CHECK(r.ricci.equations[0].value.is_zero_literal());
  CHECK(r.ricci.equations[1].value.is_zero_literal());

  geo::ManifoldOptions o;
  o.positive = {"p"};
  auto cf = geo::build_manifold("p(y)*x^2 + q(y)*x + r(y)", o);
  auto red = cls::residual_systems(cf, VectorField::parse("0", "0", "c1/sqrt(p(y))"), sym::Expr());
  CHECK(cf.is_zero(red.ricci_reduced.equations[0].value) == sym::Trilean::Zero);
}

TEST_CASE("residual_systems: every equation is a Lie-derivative component") {
  const char* fs[] = {"F(x,y)", "-2*exp(x)", "p(y)*x^2 + q(y)*x + r(y)", "sin(x)*y + 2*x^2 + cos(y)"};
  const VectorField xs[] = {VectorField::parse("u(t,x,y)", "v(t,x,y)", "z(t,x,y)"),
                            VectorField::parse("t*y + x^2", "exp(y)*x", "t - y^2"),
                            VectorField::parse("-c1*t - x*f1'(y) + f2(y)", "f1(y)", "c1*y + c2")};
  for (const char* f : fs) {
    auto w = geo::build_manifold(f);
    auto g = geo::Geometry::build(w);
    for (const auto& x : xs) {
      auto s = cls::residual_systems(w, g, x, sym::parse("eta"));
      CHECK(s.homothety.equations.size() == 6);
      CHECK(s.affine.equations.size() == 18);
      CHECK(s.ricci.equations.size() == 3);
      for (const auto* sys : s.all()) {
        for (const auto& eq : sys->equations) {
          if (sys == &s.ricci_reduced) continue;
          INFO(f << " " << x.str() << " " << eq.name);
          CHECK(sym::normalizes_to_zero(eq.value - eq.tensor_side));
        }
      }
    }
  }
}

TEST_CASE("generate_family: generators and errors") {
  auto nb = cls::generate_family(cls::FamilyTag::Nb, {});
  int affine = 0;
  for (const auto& g : nb.generators) affine += g.claim <= Level::Affine ? 1 : 0;
  CHECK(affine == 4);

  auto c = cls::generate_family(cls::FamilyTag::CW, {});
  CHECK(c.generators[0].field.str() == "(-x*cos(y), sin(y), 0)");
  CHECK(c.generators[1].field.str() == "(x*sin(y), cos(y), 0)");

  cls::FamilyParams bad;
  bad.b = 0;
  CHECK_THROWS_AS(cls::generate_family(cls::FamilyTag::Nb, bad), cls::FamilyError);
  bad = {};
  bad.eps = 2;
  CHECK_THROWS_AS(cls::generate_family(cls::FamilyTag::CW, bad), cls::FamilyError);
  CHECK(cls::parse_family("cflat") == cls::FamilyTag::ConformallyFlat);
}

TEST_CASE("verify_theorems: passes and detects an injected fault") {
  cls::VerifyOptions o;
  o.seed = 7;
  auto r = cls::verify_theorems(o);
  for (const auto& c : r.checks) {
    INFO(c.section << " " << c.subject << " " << c.item << " " << c.detail);
    CHECK(c.passed);
  }
  REQUIRE(r.resolutions.size() == 3);
  for (const auto& res : r.resolutions) CHECK(res.adopted == "a");

  o.inject_fault = true;
  o.family = cls::FamilyTag::CW;
  const auto faulty = cls::verify_theorems(o);
  CHECK(faulty.failures() == 1);
  for (const auto& c : faulty.checks) {
    if (c.passed) continue;
    CHECK(c.item.find(".faulted") != std::string::npos);
    REQUIRE(c.witness.has_value());
    CHECK(std::abs(c.witness->value) > cls::kMinWitness);
  }
}
