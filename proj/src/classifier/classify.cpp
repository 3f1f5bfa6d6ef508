#include "walker/classifier/classify.hpp"

#include <cstdio>

#include "walker/symexpr/calculus.hpp"

namespace walker::cls {

using geo::Tensor;
using sym::Trilean;

const char* level_key(Level level) {
  switch (level) {
    case Level::Killing:
      return "killing";
    case Level::Homothetic:
      return "homothetic";
    case Level::Affine:
      return "affine";
    case Level::Curvature:
      return "curvature_collineation";
    case Level::Ricci:
      return "ricci_collineation";
    case Level::Weyl:
      return "weyl_collineation";
  }
  return "?";
}

std::optional<Level> parse_level(const std::string& text) {
  for (Level l : kLevels) {
    if (text == level_key(l)) return l;
  }
  if (text == "curvature") return Level::Curvature;
  if (text == "ricci" || text == "matter") return Level::Ricci;
  if (text == "weyl") return Level::Weyl;
  return std::nullopt;
}

const char* outcome_key(Outcome outcome) {
  switch (outcome) {
    case Outcome::Holds:
      return "holds";
    case Outcome::Fails:
      return "fails";
    case Outcome::Unknown:
      return "unknown";
  }
  return "?";
}

std::optional<Level> ClassificationReport::strongest() const {
  for (Level l : kLevels) {
    if (l != Level::Weyl && holds(l)) return l;
  }
  return std::nullopt;
}

bool ClassificationReport::proper(Level level) const {
  if (!holds(level)) return false;
  if (level == Level::Killing || level == Level::Weyl) return true;
  return at(static_cast<Level>(static_cast<int>(level) - 1)).outcome == Outcome::Fails;
}

bool ClassificationReport::decided() const {
  for (const auto& v : verdicts) {
    if (v.outcome == Outcome::Unknown) return false;
  }
  return true;
}

Verdict test_vanishing(Level level, const WalkerManifold& w, const Tensor& t, const std::string& name) {
  Verdict v;
  v.level = level;
  v.outcome = Outcome::Holds;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Expr& c = t.component(i);
    if (c.is_zero_literal()) continue;
    sym::ZeroTestResult r = w.zero_test(c);
    if (r.verdict == Trilean::Zero) continue;
    const std::string label = name + t.label(t.unflatten(i));
    if (r.verdict == Trilean::NonZero) {
      v.outcome = Outcome::Fails;
      v.witness = Witness{label, r.witness->point, r.witness->params, r.witness->value, sym::to_string(r.reduced)};
      v.undecided.clear();
      return v;
    }
    v.outcome = Outcome::Unknown;
    v.undecided.push_back(label + " = " + sym::to_string(r.reduced));
  }
  return v;
}

namespace {

void merge_constancy(Verdict& v, const WalkerManifold& w, const Expr& eta) {
  if (v.outcome == Outcome::Fails) return;
  for (int c = 0; c < sym::kDim; ++c) {
    Expr d = w.simplify(sym::diff(eta, c));
    if (d.is_zero_literal()) continue;
    sym::ZeroTestResult r = w.zero_test(d);
    if (r.verdict == Trilean::Zero) continue;
    const std::string label = std::string("d") + sym::coord_name(c) + "(eta)";
    if (r.verdict == Trilean::NonZero) {
      v.outcome = Outcome::Fails;
      v.witness = Witness{label, r.witness->point, r.witness->params, r.witness->value, sym::to_string(r.reduced)};
      v.undecided.clear();
      v.note = "homothety factor is not constant";
      return;
    }
    v.outcome = Outcome::Unknown;
    v.undecided.push_back(label + " = " + sym::to_string(r.reduced));
  }
}

}  // namespace

ClassificationReport classify(const WalkerManifold& base, const geo::Geometry& geo, const VectorField& x,
                              const ClassifyOptions& options) {
  const WalkerManifold w = base.with_assumptions(options.rules, options.positive);
  ClassificationReport report;

  const Tensor lg = lie::lie_metric(w, geo, x);
  report.at(Level::Killing) = test_vanishing(Level::Killing, w, lg, "(L_X g)");

  const Expr eta = w.simplify(lg(sym::kT, sym::kY));
  report.eta = eta;
  const Tensor shifted =
      (lg - eta * geo.g.metric).map([&](const Expr& c) { return w.simplify(c); });
  report.at(Level::Homothetic) = test_vanishing(Level::Homothetic, w, shifted, "(L_X g - eta g)");
  merge_constancy(report.at(Level::Homothetic), w, eta);

  report.at(Level::Affine) = test_vanishing(Level::Affine, w, lie::lie_connection(w, geo, x), "(L_X nabla)");
  report.at(Level::Curvature) = test_vanishing(Level::Curvature, w, lie::lie_riemann(w, geo, x), "(L_X R)");
  report.at(Level::Ricci) = test_vanishing(Level::Ricci, w, lie::lie_ricci(w, geo, x), "(L_X rho)");

  Verdict& weyl = report.at(Level::Weyl);
  weyl.level = Level::Weyl;
  weyl.outcome = Outcome::Holds;
  weyl.note = "trivial in dimension three";

  // A level that holds implies every weaker level; undecided weaker levels
  // are resolved by implication, contradictions are flagged.
  for (std::size_t i = 0; i + 2 < kLevels.size(); ++i) {
    const Verdict& strong = report.verdicts[i];
    Verdict& weak = report.verdicts[i + 1];
    if (strong.outcome != Outcome::Holds) continue;
    if (weak.outcome == Outcome::Unknown) {
      weak.outcome = Outcome::Holds;
      weak.note = std::string("implied by ") + level_key(strong.level);
      weak.undecided.clear();
    } else if (weak.outcome == Outcome::Fails) {
      report.inconsistent = true;
    }
  }
  return report;
}

ClassificationReport classify(const WalkerManifold& w, const VectorField& x, const ClassifyOptions& options) {
  return classify(w, geo::Geometry::build(w), x, options);
}

namespace {

std::string format_point(const std::array<double, 3>& p) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.6g, %.6g, %.6g)", p[0], p[1], p[2]);
  return buf;
}

}  // namespace

std::vector<std::string> render_text(const ClassificationReport& report) {
  std::vector<std::string> lines;
  for (const auto& v : report.verdicts) {
    std::string line = std::string(level_key(v.level)) + ": " + outcome_key(v.outcome);
    if (!v.note.empty()) line += " (" + v.note + ")";
    lines.push_back(line);
    if (v.witness) {
      char val[48];
      std::snprintf(val, sizeof val, "%.6g", v.witness->value);
      lines.push_back("  witness: " + v.witness->component + " = " + val + " at (t,x,y) = " +
                      format_point(v.witness->point));
      lines.push_back("  residual: " + v.witness->residual);
    }
    for (const auto& u : v.undecided) lines.push_back("  undecided: " + u);
  }
  if (report.eta) lines.push_back("eta = " + sym::to_string(*report.eta));
  if (auto s = report.strongest()) {
    lines.push_back(std::string("strongest: ") + level_key(*s) + (report.proper(*s) ? " (proper)" : ""));
  }
  if (report.inconsistent) lines.push_back("warning: verdicts violate the symmetry hierarchy");
  return lines;
}

}  // namespace walker::cls
