// Acceptance suite: one PASS/FAIL line per criterion, each under a runtime
// budget. Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "../support/corpus.hpp"
#include "walker/classifier/systems.hpp"
#include "walker/classifier/verify.hpp"
#include "walker/cli/commands.hpp"
#include "walker/cli/records.hpp"
#include "walker/oracle/oracle.hpp"
#include "walker/symexpr/parse.hpp"
#include "walker/symexpr/realize.hpp"

using namespace walker;
using geo::Expr;
using geo::Tensor;
using geo::WalkerManifold;
using lie::VectorField;
using sym::Trilean;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  std::vector<std::string> problems;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (problems.size() < 5) problems.push_back(what);
  }
};

struct Criterion {
  int id;
  const char* name;
  double budget;  // seconds
  std::function<void(Outcome&)> run;
};

std::string num(double v) { return cli::format_number(v); }

WalkerManifold manifold(const testing::CorpusEntry& e) { return geo::build_manifold(e.f, e.options); }

bool vanishes(const WalkerManifold& w, const Expr& e) { return w.is_zero(e) == Trilean::Zero; }

// First component of t that is not provably zero, or "" when all are.
std::string nonvanishing(const WalkerManifold& w, const Tensor& t, const std::string& name) {
  std::string bad;
  t.for_each_index([&](const Tensor::Index& ix) {
    if (bad.empty() && !vanishes(w, t.at(ix))) bad = name + t.label(ix);
  });
  return bad;
}

VectorField vf(const std::string& a, const std::string& b, const std::string& c) { return VectorField::parse(a, b, c); }

void closed_forms(Outcome& o) {
  int entries = 0;
  for (const auto& e : testing::geometry_corpus()) {
    const WalkerManifold w = manifold(e);
    const geo::Geometry g = geo::Geometry::build(w);
    const std::pair<Tensor, Tensor> pairs[] = {
        {g.gamma, geo::closed_form::christoffel(w)},
        {g.curvature.riemann, geo::closed_form::riemann(w)},
        {g.curvature.nabla_riemann, geo::closed_form::nabla_riemann(w)},
        {g.ricci.ricci, geo::closed_form::ricci(w)},
    };
    const char* names[] = {"Gamma", "R", "nablaR", "rho"};
    for (int i = 0; i < 4; ++i) {
      const std::string bad = nonvanishing(w, pairs[i].first - pairs[i].second, names[i]);
      o.require(bad.empty(), e.name + ": " + bad);
    }
    ++entries;
  }
  o.require(entries >= 10, "fewer than 10 corpus functions");
  o.detail = std::to_string(entries) + " functions, Gamma R nablaR rho";
}

void structural_identities(Outcome& o) {
  int entries = 0;
  for (const auto& e : testing::geometry_corpus()) {
    const WalkerManifold w = manifold(e);
    const geo::Geometry g = geo::Geometry::build(w);
    o.require(vanishes(w, g.ricci.scalar), e.name + ": tau");
    o.require(nonvanishing(w, geo::nabla_metric(w), "nabla g").empty(), e.name + ": nabla g");
    const Tensor& gam = g.gamma;
    const Tensor& r = g.curvature.riemann;
    const Tensor& nr = g.curvature.nabla_riemann;
    for (int k = 0; k < 3; ++k) {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          o.require(vanishes(w, gam(k, i, j) - gam(k, j, i)), e.name + ": torsion");
          for (int l = 0; l < 3; ++l) {
            o.require(vanishes(w, r(k, i, j, l) + r(k, j, l, i) + r(k, l, i, j)), e.name + ": first Bianchi");
            for (int m = 0; m < 3; ++m) {
              o.require(vanishes(w, nr(k, i, j, l, m) - g.curvature.omega(m) * r(k, i, j, l)),
                        e.name + ": nabla R - omega R");
            }
          }
        }
      }
    }
    ++entries;
  }
  o.detail = std::to_string(entries) + " functions";
}

// Every equation of every system equals a fixed multiple of the Lie
// derivative component named in its label, recomputed here.
void system_regression(Outcome& o) {
  const std::vector<VectorField> fields = {
      vf("A(t,x,y)", "B(t,x,y)", "C(t,x,y)"),
      vf("t*y^2 + exp(x)", "sin(t*y) + x^3", "t^2*x - y"),
      vf("A(t,x,y)", "x*B(y)", "C(y)"),
  };
  const sym::Rational scales[] = {sym::Rational(1, 2), 1, 2, -2};
  int equations = 0, nonzero = 0;
  for (const auto& e : testing::geometry_corpus()) {
    const WalkerManifold w = manifold(e);
    const geo::Geometry g = geo::Geometry::build(w);
    const Expr eta = sym::parse("eta");
    for (const auto& x : fields) {
      const cls::ResidualSystems s = cls::residual_systems(w, g, x, eta);
      const std::vector<std::pair<std::string, Tensor>> tensors = {
          {"(L_X g - eta g)", lie::lie_metric(w, x) - eta * g.g.metric},
          {"(L_X nabla)", lie::lie_connection(w, x)},
          {"(L_X rho)", lie::lie_ricci(w, x)},
      };
      for (const auto* sys : s.all()) {
        for (const auto& eq : sys->equations) {
          ++equations;
          bool found = false, matched = false;
          for (const auto& [prefix, t] : tensors) {
            if (eq.component.rfind(prefix, 0) != 0) continue;
            t.for_each_index([&](const Tensor::Index& ix) {
              if (found || prefix + t.label(ix) != eq.component) return;
              found = true;
              for (const auto& sc : scales) {
                if (!matched && vanishes(w, eq.value - Expr(sc) * t.at(ix))) matched = true;
              }
            });
          }
          o.require(found && matched, e.name + " " + x.str() + ": " + eq.name + " vs " + eq.component);
          if (!eq.value.is_zero_literal()) ++nonzero;
        }
      }
    }
  }
  o.require(nonzero * 2 > equations, "too few nontrivial equations");
  o.detail = std::to_string(equations) + " equations (" + std::to_string(nonzero) + " nonzero)";
}

void verify_paper(Outcome& o) {
  std::ostringstream out, err;
  cli::CommonOptions co;
  co.format = cli::Format::Records;
  const int code = cli::run_verify_paper(std::nullopt, false, co, out, err);
  o.require(code == cli::kOk, "exit code " + std::to_string(code) + " " + err.str());
  std::istringstream in(out.str());
  int checks = 0, proper = 0;
  double smallest = 1e300;
  for (std::string line; std::getline(in, line);) {
    const auto r = cli::parse_record(line);
    if (!r) {
      o.require(false, "malformed record: " + line);
      continue;
    }
    if (cli::field_value(*r, "record") != "check") continue;
    ++checks;
    const std::string item = cli::field_value(*r, "item").value_or("");
    if (item.size() > 7 && item.compare(item.size() - 7, 7, ".proper") == 0) {
      ++proper;
      const double v = std::fabs(std::stod(cli::field_value(*r, "value").value_or("0")));
      smallest = std::min(smallest, v);
      o.require(v > cls::kMinWitness, item + " witness " + num(v));
    }
  }
  o.require(proper > 0, "no properness checks");
  o.detail = std::to_string(checks) + " checks, " + std::to_string(proper) + " properness witnesses, smallest " +
             num(smallest);
}

std::string random_function(sym::Rng& rng, bool all_coords) {
  const char* coords[] = {"t", "x", "y"};
  const char* wraps[] = {"", "exp", "sin", "cos"};
  std::string out;
  for (int term = 0; term < 3; ++term) {
    std::string mono = "(" + rng.grid(-2, 2).get_str() + ")";
    for (int c = all_coords ? 0 : 2; c < 3; ++c) {
      const int power = static_cast<int>(rng.next() % 3);
      if (power) mono += "*" + std::string(coords[c]) + "^" + std::to_string(power);
    }
    const char* wrap = wraps[rng.next() % 4];
    const std::string arg = "(" + rng.grid(-1, 1).get_str() + ")*" + coords[all_coords ? rng.next() % 3 : 2];
    if (*wrap) mono += "*" + std::string(wrap) + "(" + arg + ")";
    out += (term ? " + " : "") + mono;
  }
  return out;
}

// X1(t,x,y) d_t are Ricci collineations and X1(y) d_t curvature collineations
// for every f.
void infinite_families(Outcome& o) {
  sym::Rng rng(0x1f1f);
  std::vector<std::string> general, of_y;
  for (int i = 0; i < 5; ++i) general.push_back(random_function(rng, true));
  for (int i = 0; i < 5; ++i) of_y.push_back(random_function(rng, false));
  int checks = 0;
  for (const auto& e : testing::geometry_corpus()) {
    const WalkerManifold w = manifold(e);
    const geo::Geometry g = geo::Geometry::build(w);
    for (const auto& s : general) {
      const auto v = cls::test_vanishing(cls::Level::Ricci, w, lie::lie_ricci(w, g, vf(s, "0", "0")), "(L_X rho)");
      o.require(v.outcome == cls::Outcome::Holds, e.name + ": ricci " + s);
      ++checks;
    }
    for (const auto& s : of_y) {
      const auto v =
          cls::test_vanishing(cls::Level::Curvature, w, lie::lie_riemann(w, g, vf(s, "0", "0")), "(L_X R)");
      o.require(v.outcome == cls::Outcome::Holds, e.name + ": curvature " + s);
      ++checks;
    }
  }
  o.detail = std::to_string(checks) + " checks over 5 + 5 random fields";
}

void oracle_equivalence(Outcome& o) {
  using namespace walker::oracle;
  const VectorField x = vf("t*y + x^2", "sin(y)*x", "y^2/4 + t/3");
  double worst = 0, lo = 1e9, hi = 0;
  int entries = 0, measured = 0;
  for (const auto& e : testing::geometry_corpus()) {
    geo::ManifoldOptions opts = e.options;
    for (const auto& [k, v] : e.oracle_params) opts.params[k] = v;
    std::map<std::string, Expr> fixed;
    for (const auto& [k, v] : e.oracle_fixed) fixed[k] = sym::parse(v);
    const WalkerManifold w = geo::build_manifold(e.f, opts);
    const geo::Geometry g = geo::Geometry::build(w);
    const Realized r = realize(w, {x}, 11, fixed);
    SamplePlan plan;
    plan.count = 100;
    const auto pts = plan.generate(r);
    const MetricFn metric = metric_evaluator(r);
    const std::pair<LieKind, Tensor> lie_sym[] = {{LieKind::Metric, lie::lie_metric(w, g, x)},
                                                  {LieKind::Connection, lie::lie_connection(w, g, x)},
                                                  {LieKind::Riemann, lie::lie_riemann(w, g, x)},
                                                  {LieKind::Ricci, lie::lie_ricci(w, g, x)}};
    double gap = 0, coarse = 0, fine = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Point& p = pts[i];
      const FdTensors fd = fd_tensors(metric, p);
      const NumTensor sr = evaluate(g.curvature.riemann, r, p);
      gap = std::max({gap, relative_gap(fd.christoffel, evaluate(g.gamma, r, p)), relative_gap(fd.riemann, sr),
                      relative_gap(fd.ricci, evaluate(g.ricci.ricci, r, p)), std::fabs(fd.scalar)});
      for (const auto& [kind, t] : lie_sym) gap = std::max(gap, relative_gap(fd_lie(kind, r, x, p), evaluate(t, r, p)));
      if (i < 10) {
        coarse += relative_gap(fd_tensors(metric, p, 1e-3).riemann, sr);
        fine += relative_gap(fd_tensors(metric, p, 5e-4).riemann, sr);
      }
    }
    o.require(pts.size() == 100, e.name + ": sample size");
    o.require(gap < 1e-6, e.name + ": gap " + num(gap));
    worst = std::max(worst, gap);
    // Quadratic-in-x metrics difference exactly; the ratio is then noise.
    if (coarse > 1e-13) {
      const double ratio = coarse / fine;
      o.require(ratio > 3 && ratio < 5, e.name + ": halving ratio " + num(ratio));
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      ++measured;
    }
    ++entries;
  }
  o.require(measured >= 5, "too few entries with measurable truncation error");
  o.detail = std::to_string(entries) + " functions x 100 points, worst gap " + num(worst) + ", halving ratio " +
             num(lo) + ".." + num(hi) + " on " + std::to_string(measured) + " functions";
}

void flow_pullback(Outcome& o) {
  using namespace walker::oracle;
  double killing = 0, homothetic = 0, shear_err = 0;
  for (int eps : {1, -1}) {
    cls::FamilyParams fp;
    fp.eps = eps;
    const cls::SymmetryFamily fam = cls::generate_family(cls::FamilyTag::CW, fp);
    const Realized r = realize(fam.manifold, {}, 3);
    SamplePlan plan;
    plan.count = 20;
    plan.box = 1;
    const auto pts = plan.generate(r);
    for (const auto& gen : fam.generators) {
      const bool is_killing = gen.claim == cls::Level::Killing;
      const bool is_homothetic = gen.claim == cls::Level::Homothetic;
      if (!is_killing && !is_homothetic) continue;
      double eta = 0;
      if (is_homothetic) {
        const auto rep = cls::classify(fam.manifold, gen.field);
        o.require(rep.eta && rep.eta->is_number(), gen.name + ": constant eta");
        if (rep.eta && rep.eta->is_number()) eta = rep.eta->value().get_d();
      }
      for (double s : {1e-2, -1e-2}) {
        for (const auto& p : pts) {
          FlowOptions fo;
          fo.s = s;
          fo.eta = eta;
          const double d = flow_pullback_check(r, gen.field, p, fo);
          o.require(d < 1e-6, fam.name + " " + gen.name + ": defect " + num(d));
          (is_killing ? killing : homothetic) = std::max(is_killing ? killing : homothetic, d);
          if (is_homothetic) {
            fo.eta = 0;
            const double raw = flow_pullback_check(r, gen.field, p, fo);
            o.require(raw > 1e-4, fam.name + " " + gen.name + ": uncorrected defect too small");
          }
        }
      }
    }
    for (double s : {1e-2, -1e-2}) {
      for (const auto& p : pts) {
        FlowOptions fo;
        fo.s = s;
        const double d = flow_pullback_check(r, vf("y", "0", "0"), p, fo);
        const double rel = std::fabs(d - 2 * std::fabs(s)) / (2 * std::fabs(s));
        o.require(rel <= 0.1, fam.name + " y d_t: defect " + num(d));
        shear_err = std::max(shear_err, rel);
      }
    }
  }
  o.detail = "Killing " + num(killing) + ", homothetic corrected " + num(homothetic) +
             ", y d_t relative to 2|s| off by " + num(shear_err);
}

// Pc with c = 0 and alpha = 1 is the Cahen-Wallach space with eps = 1; every
// Pc generator specializes to a constant multiple of a CW generator.
void pc_cw_consistency(Outcome& o) {
  cls::FamilyParams pp;
  pp.c = 0;
  const cls::SymmetryFamily pc = cls::generate_family(cls::FamilyTag::Pc, pp);
  cls::FamilyParams cp;
  cp.eps = 1;
  const cls::SymmetryFamily cw = cls::generate_family(cls::FamilyTag::CW, cp);
  const WalkerManifold& w = cw.manifold;

  const sym::Bindings unit_alpha = {{"alpha", Expr(1)}};
  o.require(sym::normalizes_to_zero(sym::substitute(pc.manifold.f(), unit_alpha) - w.f()), "metrics differ");
  for (const auto& rule : pc.manifold.rules()) {
    const Expr lhs = Expr::func(rule.symbol, rule.args, rule.orders);
    o.require(sym::normalizes_to_zero(sym::substitute(lhs - rule.replacement, unit_alpha)),
              "alpha = 1 violates " + rule.str());
  }

  auto proportional = [](const VectorField& a, const VectorField& b) {
    int pivot = -1;
    for (int i = 0; i < 3 && pivot < 0; ++i) {
      if (!sym::normalizes_to_zero(b[i])) pivot = i;
    }
    if (pivot < 0) return false;
    const Expr k = sym::normalize(a[pivot] / b[pivot]);
    if (!k.is_number() || k.is_zero_literal()) return false;
    for (int i = 0; i < 3; ++i) {
      if (!sym::normalizes_to_zero(a[i] - k * b[i])) return false;
    }
    return true;
  };

  int matched = 0;
  for (const auto& g : pc.generators) {
    std::vector<sym::Bindings> choices = {unit_alpha};
    if (g.name == "killing.h") {
      choices = {{{"alpha", Expr(1)}, {"h", sym::parse("sin(y)")}}, {{"alpha", Expr(1)}, {"h", sym::parse("cos(y)")}}};
    }
    for (const auto& b : choices) {
      VectorField x;
      for (int i = 0; i < 3; ++i) x[i] = sym::substitute(g.field[i], b);
      for (const auto& rule : g.rules) {
        const Expr lhs = Expr::func(rule.symbol, rule.args, rule.orders);
        o.require(sym::normalizes_to_zero(sym::substitute(lhs - rule.replacement, b)), g.name + ": " + rule.str());
      }
      bool found = false;
      for (const auto& h : cw.generators) {
        if (h.claim == g.claim && proportional(x, h.field)) found = true;
      }
      o.require(found, g.name + " " + x.str() + " has no CW counterpart");
      matched += found;
    }
  }
  o.detail = std::to_string(matched) + " specialized generators matched exactly";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "closed forms", 5, closed_forms},
      {2, "structural identities", 10, structural_identities},
      {3, "system regression", 10, system_regression},
      {4, "verify-paper", 60, verify_paper},
      {5, "infinite-dimensional families", 5, infinite_families},
      {6, "oracle equivalence", 30, oracle_equivalence},
      {7, "flow pullback", 10, flow_pullback},
      {8, "Pc/CW consistency", 5, pc_cw_consistency},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < c.budget, "over budget");
    std::printf("%s [%d] %s: %s (%.2f s, budget %.0f s)\n", o.ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                secs, c.budget);
    for (const auto& p : o.problems) std::printf("    %s\n", p.c_str());
    std::fflush(stdout);
    failed += !o.ok;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
