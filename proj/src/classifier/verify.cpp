#include "walker/classifier/verify.hpp"

#include <cmath>
#include <cstdio>

#include "walker/symexpr/parse.hpp"
#include "walker/symexpr/realize.hpp"

namespace walker::cls {

using geo::Expr;
using geo::Tensor;
using geo::WalkerManifold;
using lie::VectorField;
using sym::kT;
using sym::kX;
using sym::kY;

std::size_t VerifyReport::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.passed ? 0 : 1;
  return n;
}

namespace {

Expr e(const std::string& text) { return sym::parse(text); }
VectorField vf(const std::string& a, const std::string& b, const std::string& c) { return VectorField::parse(a, b, c); }

struct Run {
  const VerifyOptions& opt;
  VerifyReport report;

  bool wants(FamilyTag tag) const { return !opt.family || *opt.family == tag; }
  bool general() const { return !opt.family; }

  WalkerManifold tune(const WalkerManifold& w) const {
    WalkerManifold out = w.with_seed(opt.seed);
    return opt.tolerance ? out.with_tolerance(*opt.tolerance) : out;
  }

  CheckRecord& add(CheckRecord r) {
    report.checks.push_back(std::move(r));
    return report.checks.back();
  }

  // Claimed level holds; when proper, the next stronger level fails with a
  // witness of usable size.
  void claim(const std::string& section, const std::string& subject, const std::string& item,
             const WalkerManifold& w, const geo::Geometry& geo, const VectorField& x, Level level, bool proper,
             const ClassifyOptions& co = {}) {
    const ClassificationReport rep = classify(w, geo, x, co);
    const Verdict& v = rep.at(level);
    CheckRecord r{section, subject, item, level_key(level), "holds", outcome_key(v.outcome),
                  v.outcome == Outcome::Holds, std::nullopt, rep.eta ? sym::to_string(*rep.eta) : "", ""};
    if (!v.undecided.empty()) r.detail = "undecided: " + v.undecided.front();
    if (v.witness) {
      r.witness = v.witness;
      r.detail = v.witness->component + " = " + v.witness->residual;
    }
    if (rep.inconsistent) {
      r.passed = false;
      r.detail = "verdicts violate the symmetry hierarchy";
    }
    add(std::move(r));
    if (!proper) return;
    const auto up = stronger(level);
    if (!up) return;
    const Verdict& s = rep.at(*up);
    CheckRecord p{section, subject, item + ".proper", level_key(*up), "fails", outcome_key(s.outcome),
                  false, s.witness, rep.eta ? sym::to_string(*rep.eta) : "", ""};
    p.passed = s.outcome == Outcome::Fails && s.witness && std::fabs(s.witness->value) > kMinWitness;
    if (s.witness) p.detail = s.witness->component + " = " + s.witness->residual;
    add(std::move(p));
  }

  void identity(const std::string& subject, const std::string& item, const WalkerManifold& w, const Tensor& t,
                const std::string& name) {
    const Verdict v = test_vanishing(Level::Killing, w, t, name);
    CheckRecord r{"theorem", subject, item, "", "zero", v.outcome == Outcome::Holds ? "zero" : outcome_key(v.outcome),
                  v.outcome == Outcome::Holds, v.witness, "", ""};
    if (!v.undecided.empty()) r.detail = "undecided: " + v.undecided.front();
    if (v.witness) r.detail = v.witness->component + " = " + v.witness->residual;
    add(std::move(r));
  }

  void families();
  void structure_theorem();
  void collineation_theorem();
  void resolutions();
  void infinite_dimensionality();
  void consistency();
  void killing_rank();
};

std::vector<std::pair<FamilyTag, FamilyParams>> family_instances() {
  std::vector<std::pair<FamilyTag, FamilyParams>> out;
  for (int b : {1, 2, -1}) {
    FamilyParams p;
    p.b = b;
    out.emplace_back(FamilyTag::Nb, p);
  }
  for (const sym::Rational& c : {sym::Rational(1), sym::Rational(-2), sym::Rational(0)}) {
    FamilyParams p;
    p.c = c;
    out.emplace_back(FamilyTag::Pc, p);
  }
  {
    FamilyParams p;
    p.c = sym::Rational(1, 2);
    p.k = 3;
    out.emplace_back(FamilyTag::Pc, p);
  }
  for (int eps : {1, -1}) {
    FamilyParams p;
    p.eps = eps;
    out.emplace_back(FamilyTag::CW, p);
  }
  out.emplace_back(FamilyTag::ConformallyFlat, FamilyParams{});
  return out;
}

void Run::families() {
  bool faulted = false;
  for (const auto& [tag, params] : family_instances()) {
    if (!wants(tag)) continue;
    SymmetryFamily fam = generate_family(tag, params);
    const WalkerManifold w = tune(fam.manifold);
    const geo::Geometry geo = geo::Geometry::build(w);
    for (Generator& g : fam.generators) {
      VectorField field = g.field;
      std::string item = g.name;
      if (opt.inject_fault && !faulted && g.claim == Level::Killing && !field[0].is_zero_literal()) {
        field[0] = -field[0];  // wrong sign in the d_t component
        item += ".faulted";
        faulted = true;
      }
      claim("family", fam.name, item, w, geo, field, g.claim, g.proper, g.options());
    }
    // t d_t is a Ricci collineation that is not a curvature collineation.
    claim("family", fam.name, "ricci.t_dt", w, geo, vf("t", "0", "0"), Level::Ricci, true);
  }
  if (opt.inject_fault && !faulted) {
    add({"family", "fault", "injected", "", "holds", "fails", false, std::nullopt, "", "injected fault"});
  }
}

// Structure of Killing, homothetic and affine fields on an arbitrary f.
void Run::structure_theorem() {
  const WalkerManifold w = tune(geo::build_manifold("F(x,y)"));
  const geo::Geometry geo = geo::Geometry::build(w);
  const Expr f = w.f(), fx = w.f_d(1, 0), fy = w.f_d(0, 1);
  const std::string subject = "structure on arbitrary f";

  auto dy2 = [](const Expr& c) {
    Tensor t = Tensor::covariant(2);
    t(kY, kY) = c;
    return t;
  };

  {
    const VectorField x = vf("-c1*t - x*f1'(y) + f2(y)", "f1(y)", "c1*y + c2");
    const Expr e7 = e("2*c1") * f - e("2*f1''(y)*x") + e("2*f2'(y)") + e("f1(y)") * fx + e("c1*y + c2") * fy;
    identity(subject, "killing.form", w, lie::lie_metric(w, geo, x) - dy2(e7), "(L_X g - E dy2)");
  }
  {
    const VectorField x = vf("eta*t - c1*t - x*f1'(y) + f2(y)", "eta/2*x + f1(y)", "c1*y + c2");
    const Expr e9 = e("2*c1 - eta") * f - e("2*f1''(y)*x") + e("2*f2'(y)") + e("eta/2*x + f1(y)") * fx +
                    e("c1*y + c2") * fy;
    identity(subject, "homothetic.form", w, lie::lie_metric(w, geo, x) - e("eta") * geo.g.metric - dy2(e9),
             "(L_X g - eta g - E dy2)");
  }
  {
    const VectorField x = vf("c3*t - x*f1'(y) + f2(y)", "(c1 + c3)/2*x + f1(y)", "c1*y + c2");
    const Expr e11 = e("c1 - c3") * f - e("2*f1''(y)*x") + e("2*f2'(y)") + e("(c1 + c3)/2*x + f1(y)") * fx +
                     e("c1*y + c2") * fy + e("c4");
    const Expr ex = sym::diff(e11, kX) / Expr(2), ey = sym::diff(e11, kY) / Expr(2);
    Tensor expected(std::vector<geo::Slot>{geo::Slot::Up, geo::Slot::Down, geo::Slot::Down});
    expected(kT, kX, kY) = ex;
    expected(kT, kY, kX) = ex;
    expected(kT, kY, kY) = ey;
    expected(kX, kY, kY) = -ex;
    identity(subject, "affine.form", w, lie::lie_connection(w, geo, x) - expected, "(L_X nabla - E terms)");
  }
}

// Ricci and curvature collineations of arbitrary and quadratic f.
void Run::collineation_theorem() {
  const std::string subject = "collineations";
  {
    const WalkerManifold w = tune(geo::build_manifold("F(x,y)"));
    const geo::Geometry geo = geo::Geometry::build(w);
    const VectorField x =
        vf("u(t,x,y)", "-(2*f1'(y)*F_{xx}(x,y) + f1(y)*F_{xxy}(x,y))/F_{xxx}(x,y)", "f1(y)");
    claim("theorem", subject, "ricci.arbitrary_f", w, geo, x, Level::Ricci, false);
    claim("theorem", subject, "curvature.X1(y)", w, geo, vf("g(y)", "0", "0"), Level::Curvature, false);
  }
  {
    geo::ManifoldOptions mo;
    mo.positive = {"a"};
    const WalkerManifold w = tune(geo::build_manifold("a(y)*x^2 + b(y)*x + d(y)", mo));
    const geo::Geometry geo = geo::Geometry::build(w);
    claim("theorem", subject, "ricci.quadratic_f", w, geo, vf("u(t,x,y)", "v(t,x,y)", "c1/sqrt(abs(a(y)))"),
          Level::Ricci, true);
  }
  {
    // Negative leading coefficient: a = -n with n > 0.
    geo::ManifoldOptions mo;
    mo.positive = {"n"};
    const WalkerManifold w = tune(geo::build_manifold("-n(y)*x^2 + b(y)*x + d(y)", mo));
    const geo::Geometry geo = geo::Geometry::build(w);
    claim("theorem", subject, "ricci.quadratic_f.negative", w, geo,
          vf("u(t,x,y)", "v(t,x,y)", "c1/sqrt(n(y))"), Level::Ricci, true);
  }
}

// Both readings of each ambiguous coefficient are tested against L_X R.
void Run::resolutions() {
  struct Case {
    std::string clause;
    std::string f;
    std::set<std::string> positive;
    sym::RuleSet rules;
    std::string a_text, b_text;
    VectorField a, b;
  };
  std::vector<Case> cases;
  if (general()) {
    cases.push_back({"curvature collineation, f = F2(x) F3(y) + F4(y) x + F5(y)",
                     "F2(x)*F3(y) + F4(y)*x + F5(y)",
                     {"F3"},
                     {},
                     "c1*F3'(y)/(2*F3(y)*sqrt(abs(F3(y))))*t",
                     "(c1*F3'(y)/2)*F3(y)*sqrt(abs(F3(y)))*t",
                     vf("c1*F3'(y)/(2*F3(y)*sqrt(abs(F3(y))))*t + f6(y)", "0", "c1/sqrt(abs(F3(y)))"),
                     vf("(c1*F3'(y)/2)*F3(y)*sqrt(abs(F3(y)))*t + f6(y)", "0", "c1/sqrt(abs(F3(y)))")});
  }
  if (general() || wants(FamilyTag::ConformallyFlat)) {
    const std::string rest = " - 1/2*f4'(y)*x^2 - f5'(y)*x + f6(y)";
    cases.push_back({"curvature collineation, f quadratic in x",
                     "f1(y)*x^2 + f2(y)*x + f3(y)",
                     {"f1"},
                     {},
                     "c1*f1'(y)/(2*f1(y)*sqrt(abs(f1(y))))*t",
                     "(c1*f1'(y)/2)*f1(y)*sqrt(abs(f1(y)))*t",
                     vf("2*f4(y)*t + c1*f1'(y)/(2*f1(y)*sqrt(abs(f1(y))))*t" + rest, "f4(y)*x + f5(y)",
                        "c1/sqrt(abs(f1(y)))"),
                     vf("2*f4(y)*t + (c1*f1'(y)/2)*f1(y)*sqrt(abs(f1(y)))*t" + rest, "f4(y)*x + f5(y)",
                        "c1/sqrt(abs(f1(y)))")});
  }
  if (wants(FamilyTag::Pc)) {
    const std::string rest = " - 1/2*f1'(y)*x^2 - f2'(y)*x + f3(y)";
    cases.push_back({"curvature collineation of Pc",
                     "-x^2*alpha(y)",
                     {"alpha"},
                     {sym::RewriteRule::parse("alpha'(y) -> c*alpha(y)^(3/2)")},
                     "(2*f1(y) + c1*c/2)*t",
                     "2*f1(y) + (c1*c/2)*t",
                     vf("(2*f1(y) + c1*c/2)*t" + rest, "f1(y)*x + f2(y)", "c1/sqrt(abs(alpha(y)))"),
                     vf("2*f1(y) + (c1*c/2)*t" + rest, "f1(y)*x + f2(y)", "c1/sqrt(abs(alpha(y)))")});
  }
  for (const Case& k : cases) {
    geo::ManifoldOptions mo;
    mo.positive = k.positive;
    mo.rules = k.rules;
    const WalkerManifold w = tune(geo::build_manifold(k.f, mo));
    const geo::Geometry geo = geo::Geometry::build(w);
    const ClassificationReport ra = classify(w, geo, k.a);
    const ClassificationReport rb = classify(w, geo, k.b);
    Resolution res{k.clause, k.a_text, k.b_text, ra.at(Level::Curvature).outcome, rb.at(Level::Curvature).outcome,
                   "none"};
    const bool a_ok = res.outcome_a == Outcome::Holds, b_ok = res.outcome_b == Outcome::Holds;
    if (a_ok && !b_ok) res.adopted = "a";
    if (b_ok && !a_ok) res.adopted = "b";
    report.resolutions.push_back(res);
    CheckRecord r{"resolution", k.clause, "reading", level_key(Level::Curvature), "one reading holds",
                  "a=" + std::string(outcome_key(res.outcome_a)) + " b=" + outcome_key(res.outcome_b),
                  res.adopted != "none", std::nullopt, "", "adopted " + res.adopted};
    if (res.adopted == "a") r.witness = rb.at(Level::Curvature).witness;
    if (res.adopted == "b") r.witness = ra.at(Level::Curvature).witness;
    add(std::move(r));
  }
}

// Random X1(t,x,y) d_t are Ricci collineations; random X1(y) d_t are curvature
// collineations and generally not affine.
void Run::infinite_dimensionality() {
  std::vector<std::pair<std::string, WalkerManifold>> spaces;
  for (const auto& [tag, params] : family_instances()) {
    if (!wants(tag) || params.k || (tag == FamilyTag::Pc && params.c == 0)) continue;
    if (tag == FamilyTag::Nb && params.b != 1) continue;
    SymmetryFamily fam = generate_family(tag, params);
    spaces.emplace_back(fam.name, fam.manifold);
  }
  if (general()) spaces.emplace_back("arbitrary f", geo::build_manifold("F(x,y)"));
  std::uint64_t stream = 0;
  for (const auto& [name, base] : spaces) {
    const WalkerManifold w = tune(base);
    const geo::Geometry geo = geo::Geometry::build(w);
    for (int i = 0; i < 5; ++i) {
      sym::Rng rng = sym::Rng::stream(opt.seed ^ 0x1f1e1dULL, stream++);
      const Expr x1 = sym::random_realization({kT, kX, kY}, rng, false);
      claim("infinite", name, "ricci.random_" + std::to_string(i), w, geo, VectorField{{x1, Expr(), Expr()}},
            Level::Ricci, false);
    }
    for (int i = 0; i < 5; ++i) {
      sym::Rng rng = sym::Rng::stream(opt.seed ^ 0x2f2e2dULL, stream++);
      const Expr x1 = sym::random_realization({kY}, rng, false);
      claim("infinite", name, "curvature.random_" + std::to_string(i), w, geo, VectorField{{x1, Expr(), Expr()}},
            Level::Curvature, true);
    }
  }
}

// P_c with c = 0 and alpha = 1 is CW_{+1}; h = sin and h = cos give the two
// x-dependent Killing generators.
void Run::consistency() {
  if (!wants(FamilyTag::Pc) && !wants(FamilyTag::CW)) return;
  FamilyParams pp;
  pp.c = 0;
  const SymmetryFamily pc = generate_family(FamilyTag::Pc, pp);
  FamilyParams cp;
  cp.eps = 1;
  const SymmetryFamily cw = generate_family(FamilyTag::CW, cp);
  const WalkerManifold w = tune(cw.manifold);
  const geo::Geometry geo = geo::Geometry::build(w);

  const Generator* kh = nullptr;
  for (const auto& g : pc.generators) {
    if (g.name == "killing.h") kh = &g;
  }
  const std::pair<const char*, const char*> pairs[] = {{"sin(y)", "killing.c1"}, {"cos(y)", "killing.c2"}};
  for (const auto& [h, target] : pairs) {
    const sym::Bindings bind{{"alpha", Expr(1)}, {"h", e(h)}};
    VectorField x;
    for (int i = 0; i < 3; ++i) x[i] = sym::substitute(kh->field[i], bind);
    const Expr ode = sym::substitute(e("h''(y) + alpha(y)*h(y)"), bind);
    const VectorField* ref = nullptr;
    for (const auto& g : cw.generators) {
      if (g.name == target) ref = &g.field;
    }
    bool same = true;
    for (int i = 0; i < 3; ++i) same = same && sym::normalizes_to_zero(x[i] - (*ref)[i]);
    CheckRecord r{"consistency", "Pc(c=0,alpha=1) vs CW(eps=+1)", std::string("h=") + h, "",
                  std::string("matches ") + target, same ? "match" : "mismatch", same && sym::normalizes_to_zero(ode),
                  std::nullopt, "", "X = " + x.str()};
    add(std::move(r));
    claim("consistency", "Pc(c=0,alpha=1) vs CW(eps=+1)", std::string("h=") + h + ".killing", w, geo, x,
          Level::Killing, false);
  }
}

// The four CW Killing generators are independent: their 1-jets at a sample
// point have rank 4.
void Run::killing_rank() {
  if (!wants(FamilyTag::CW)) return;
  for (int eps : {1, -1}) {
    FamilyParams p;
    p.eps = eps;
    const SymmetryFamily fam = generate_family(FamilyTag::CW, p);
    std::vector<std::vector<double>> rows;
    const std::array<double, 3> pt{0.3, -0.7, 0.45};
    for (const auto& g : fam.generators) {
      if (g.claim != Level::Killing) continue;
      std::vector<double> row;
      for (int i = 0; i < 3; ++i) {
        row.push_back(sym::eval_numeric(g.field[i], pt, {}));
        for (int c = 0; c < 3; ++c) row.push_back(sym::eval_numeric(sym::diff(g.field[i], c), pt, {}));
      }
      rows.push_back(row);
    }
    // Gaussian elimination with partial pivoting.
    int rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
      std::size_t piv = rank;
      for (std::size_t r = rank; r < rows.size(); ++r) {
        if (std::fabs(rows[r][col]) > std::fabs(rows[piv][col])) piv = r;
      }
      if (std::fabs(rows[piv][col]) < 1e-9) continue;
      std::swap(rows[piv], rows[rank]);
      for (std::size_t r = rank + 1; r < rows.size(); ++r) {
        const double m = rows[r][col] / rows[rank][col];
        for (std::size_t k = col; k < cols; ++k) rows[r][k] -= m * rows[rank][k];
      }
      ++rank;
    }
    add({"rank", fam.name, "killing.dimension", level_key(Level::Killing), "4", std::to_string(rank), rank == 4,
         std::nullopt, "", "1-jet rank at (0.3, -0.7, 0.45)"});
  }
}

}  // namespace

VerifyReport verify_theorems(const VerifyOptions& options) {
  Run run{options, {}};
  run.families();
  if (run.general()) {
    run.structure_theorem();
    run.collineation_theorem();
  }
  run.resolutions();
  run.infinite_dimensionality();
  run.consistency();
  run.killing_rank();
  return std::move(run.report);
}

}  // namespace walker::cls
