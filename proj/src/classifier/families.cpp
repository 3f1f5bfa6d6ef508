#include "walker/classifier/families.hpp"

#include "walker/symexpr/parse.hpp"

namespace walker::cls {

using geo::Expr;
using lie::VectorField;
using sym::Rational;

const char* family_key(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::Nb:
      return "Nb";
    case FamilyTag::Pc:
      return "Pc";
    case FamilyTag::CW:
      return "CW";
    case FamilyTag::ConformallyFlat:
      return "cflat";
  }
  return "?";
}

std::optional<FamilyTag> parse_family(const std::string& text) {
  for (FamilyTag t : {FamilyTag::Nb, FamilyTag::Pc, FamilyTag::CW, FamilyTag::ConformallyFlat}) {
    if (text == family_key(t)) return t;
  }
  return std::nullopt;
}

std::optional<Level> stronger(Level level) {
  switch (level) {
    case Level::Killing:
      return std::nullopt;
    case Level::Weyl:
      return Level::Ricci;
    default:
      return static_cast<Level>(static_cast<int>(level) - 1);
  }
}

namespace {

std::string q(const Rational& v) { return "(" + v.get_str() + ")"; }

Generator gen(std::string name, const VectorField& x, Level claim, bool proper) {
  Generator g;
  g.name = std::move(name);
  g.field = x;
  g.claim = claim;
  g.proper = proper;
  return g;
}

VectorField vf(const std::string& a, const std::string& b, const std::string& c) { return VectorField::parse(a, b, c); }

sym::RewriteRule rule(const std::string& text) { return sym::RewriteRule::parse(text); }

SymmetryFamily nb(const FamilyParams& p) {
  if (p.b == 0) throw FamilyError("N_b requires b != 0");
  SymmetryFamily fam;
  fam.tag = FamilyTag::Nb;
  fam.name = "Nb(b=" + p.b.get_str() + ")";
  fam.params = p;
  fam.manifold = geo::build_manifold("-2*exp(" + q(p.b) + "*x)/" + q(p.b) + "^2");
  const std::string two_b = "2/" + q(p.b);
  auto& g = fam.generators;
  g.push_back(gen("killing.scaling", vf("t", two_b, "-y"), Level::Killing, true));
  g.push_back(gen("killing.dt", vf("1", "0", "0"), Level::Killing, true));
  g.push_back(gen("killing.dy", vf("0", "0", "1"), Level::Killing, true));
  g.push_back(gen("affine.y_dt", vf("y", "0", "0"), Level::Affine, true));
  g.push_back(gen("ricci.general", vf("u(t,x,y)", "-" + two_b + "*f1'(y)", "f1(y)"), Level::Ricci, true));
  g.push_back(gen("curvature.general",
                  vf("f2(y) - f1'(y)*t + " + two_b + "*f1''(y)*x", "-" + two_b + "*f1'(y)", "f1(y)"),
                  Level::Curvature, true));
  return fam;
}

SymmetryFamily pc(const FamilyParams& p) {
  SymmetryFamily fam;
  fam.tag = FamilyTag::Pc;
  fam.params = p;
  std::string alpha;
  // 1/sqrt|alpha|; on the explicit branch the domain k - c y > 0 makes it
  // (k - c y)/2.
  std::string inv_root;
  sym::RuleSet rules;
  std::set<std::string> positive;
  if (p.k) {
    if (*p.k <= 0) throw FamilyError("P_c with explicit alpha requires k > 0 (domain k - c y > 0 near y = 0)");
    alpha = "(4/(" + q(*p.k) + " - " + q(p.c) + "*y)^2)";
    inv_root = "((" + q(*p.k) + " - " + q(p.c) + "*y)/2)";
    fam.name = "Pc(c=" + p.c.get_str() + ",alpha=4/(" + p.k->get_str() + "-c*y)^2)";
  } else {
    alpha = "alpha(y)";
    inv_root = "(1/sqrt(abs(alpha(y))))";
    rules.push_back(rule("alpha'(y) -> " + q(p.c) + "*alpha(y)^(3/2)"));
    positive.insert("alpha");
    fam.name = "Pc(c=" + p.c.get_str() + ")";
  }
  geo::ManifoldOptions mo;
  mo.rules = rules;
  mo.positive = positive;
  fam.manifold = geo::build_manifold("-x^2*" + alpha, mo);

  auto& g = fam.generators;
  Generator kh = gen("killing.h", vf("-h'(y)*x", "h(y)", "0"), Level::Killing, true);
  kh.rules.push_back(rule("h''(y) -> -" + alpha + "*h(y)"));
  g.push_back(kh);
  g.push_back(gen("killing.dt", vf("1", "0", "0"), Level::Killing, true));
  g.push_back(gen("homothetic.scaling", vf("t", "x/2", "0"), Level::Homothetic, true));
  g.push_back(gen("affine.y_dt", vf("y", "0", "0"), Level::Affine, true));
  g.push_back(gen("ricci.general", vf("u(t,x,y)", "v(t,x,y)", "c1*" + inv_root), Level::Ricci, true));
  g.push_back(gen("curvature.general",
                  vf("-1/2*f1'(y)*x^2 - f2'(y)*x + (2*f1(y) + c1*" + q(p.c) + "/2)*t + f3(y)", "f1(y)*x + f2(y)",
                     "c1*" + inv_root),
                  Level::Curvature, true));
  return fam;
}

SymmetryFamily cw(const FamilyParams& p) {
  if (p.eps != 1 && p.eps != -1) throw FamilyError("CW_eps requires eps = +1 or -1");
  SymmetryFamily fam;
  fam.tag = FamilyTag::CW;
  fam.name = std::string("CW(eps=") + (p.eps > 0 ? "+1" : "-1") + ")";
  fam.params = p;
  fam.manifold = geo::build_manifold(p.eps > 0 ? "-x^2" : "x^2");
  auto& g = fam.generators;
  if (p.eps > 0) {
    g.push_back(gen("killing.c1", vf("-cos(y)*x", "sin(y)", "0"), Level::Killing, true));
    g.push_back(gen("killing.c2", vf("sin(y)*x", "cos(y)", "0"), Level::Killing, true));
  } else {
    g.push_back(gen("killing.c1", vf("exp(-y)*x", "exp(-y)", "0"), Level::Killing, true));
    g.push_back(gen("killing.c2", vf("-exp(y)*x", "exp(y)", "0"), Level::Killing, true));
  }
  g.push_back(gen("killing.dt", vf("1", "0", "0"), Level::Killing, true));
  g.push_back(gen("killing.dy", vf("0", "0", "1"), Level::Killing, true));
  g.push_back(gen("homothetic.scaling", vf("2*t", "x", "0"), Level::Homothetic, true));
  g.push_back(gen("affine.y_dt", vf("y", "0", "0"), Level::Affine, true));
  g.push_back(gen("ricci.general", vf("u(t,x,y)", "v(t,x,y)", "c1"), Level::Ricci, true));
  g.push_back(gen("curvature.general",
                  vf("2*f1(y)*t - 1/2*f1'(y)*x^2 - f2'(y)*x + f3(y)", "f1(y)*x + f2(y)", "c1"), Level::Curvature,
                  true));
  return fam;
}

Expr e(const std::string& text) { return sym::parse(text); }

SymmetryFamily cflat(const FamilyParams& p) {
  SymmetryFamily fam;
  fam.tag = FamilyTag::ConformallyFlat;
  fam.name = "cflat";
  fam.params = p;
  fam.manifold = geo::build_manifold("p(y)*x^2 + q(y)*x + r(y)");
  auto& g = fam.generators;

  // Killing: form with X3 = c1 y + c2 and three ODE side constraints, each
  // used as a rule eliminating p', f1'' and f2'.
  {
    Generator k = gen("killing.general", vf("-c1*t - x*f1'(y) + f2(y)", "f1(y)", "c1*y + c2"), Level::Killing, true);
    k.constraints = {
        {"p", e("(c1*y + c2)*p'(y) + 2*c1*p(y)")},
        {"f1", e("2*f1''(y) - 2*c1*q(y) - (c1*y + c2)*q'(y) - 2*f1(y)*p(y)")},
        {"f2", e("2*f2'(y) + 2*c1*r(y) + (c1*y + c2)*r'(y) + f1(y)*q(y)")},
    };
    k.rules = {rule("p'(y) -> -2*c1*p(y)/(c1*y + c2)"),
               rule("f1''(y) -> (2*c1*q(y) + (c1*y + c2)*q'(y) + 2*f1(y)*p(y))/2"),
               rule("f2'(y) -> -(2*c1*r(y) + (c1*y + c2)*r'(y) + f1(y)*q(y))/2")};
    g.push_back(k);
  }
  {
    Generator h = gen("homothetic.general",
                      vf("eta*t - c1*t - x*f1'(y) + f2(y)", "eta/2*x + f1(y)", "c1*y + c2"), Level::Homothetic,
                      true);
    h.constraints = {
        {"p", e("(c1*y + c2)*p'(y) + 2*c1*p(y)")},
        {"f1", e("2*f1''(y) + (eta/2 - 2*c1)*q(y) - (c1*y + c2)*q'(y) - 2*f1(y)*p(y)")},
        {"f2", e("2*f2'(y) + (2*c1 - eta)*r(y) + (c1*y + c2)*r'(y) + f1(y)*q(y)")},
    };
    h.rules = {rule("p'(y) -> -2*c1*p(y)/(c1*y + c2)"),
               rule("f1''(y) -> (-(eta/2 - 2*c1)*q(y) + (c1*y + c2)*q'(y) + 2*f1(y)*p(y))/2"),
               rule("f2'(y) -> -((2*c1 - eta)*r(y) + (c1*y + c2)*r'(y) + f1(y)*q(y))/2")};
    g.push_back(h);
  }
  {
    // Constants named as in the affine statement: X3 = c2 y + c3.
    Generator a = gen("affine.general",
                      vf("c1*t - x*f1'(y) + f2(y)", "(c2 + c1)/2*x + f1(y)", "c2*y + c3"), Level::Affine, true);
    a.constraints = {
        {"p", e("(c2*y + c3)*p'(y) + 2*c2*p(y)")},
        {"f1", e("2*f1''(y) + (c1 - 3*c2)/2*q(y) - (c2*y + c3)*q'(y) - 2*f1(y)*p(y)")},
        {"f2", e("2*f2'(y) + (c2 - c1)*r(y) + (c2*y + c3)*r'(y) + f1(y)*q(y) + c4")},
    };
    a.rules = {rule("p'(y) -> -2*c2*p(y)/(c2*y + c3)"),
               rule("f1''(y) -> (-(c1 - 3*c2)/2*q(y) + (c2*y + c3)*q'(y) + 2*f1(y)*p(y))/2"),
               rule("f2'(y) -> -((c2 - c1)*r(y) + (c2*y + c3)*r'(y) + f1(y)*q(y) + c4)/2")};
    g.push_back(a);
  }
  {
    Generator r = gen("ricci.general", vf("u(t,x,y)", "v(t,x,y)", "c1/sqrt(abs(p(y)))"), Level::Ricci, true);
    r.positive = {"p"};
    g.push_back(r);
  }
  {
    Generator c = gen("curvature.general",
                      vf("2*f1(y)*t + c1*p'(y)/(2*p(y)*sqrt(abs(p(y))))*t - 1/2*f1'(y)*x^2 - f2'(y)*x + f3(y)",
                         "f1(y)*x + f2(y)", "c1/sqrt(abs(p(y)))"),
                      Level::Curvature, true);
    c.positive = {"p"};
    g.push_back(c);
  }
  return fam;
}

}  // namespace

SymmetryFamily generate_family(FamilyTag tag, const FamilyParams& params) {
  switch (tag) {
    case FamilyTag::Nb:
      return nb(params);
    case FamilyTag::Pc:
      return pc(params);
    case FamilyTag::CW:
      return cw(params);
    case FamilyTag::ConformallyFlat:
      return cflat(params);
  }
  throw FamilyError("unknown family");
}

}  // namespace walker::cls
