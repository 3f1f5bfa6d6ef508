#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "walker/lie/lie.hpp"

namespace walker::cls {

using geo::Expr;
using geo::WalkerManifold;
using lie::VectorField;

/// Symmetry levels, strongest first.
enum class Level { Killing, Homothetic, Affine, Curvature, Ricci, Weyl };

inline constexpr std::array<Level, 6> kLevels{Level::Killing, Level::Homothetic, Level::Affine,
                                              Level::Curvature, Level::Ricci,     Level::Weyl};

/// Record/report key, e.g. "ricci_collineation".
const char* level_key(Level level);
/// Accepts record keys and short forms (killing, homothetic, affine,
/// curvature, ricci, weyl).
std::optional<Level> parse_level(const std::string& text);

enum class Outcome { Holds, Fails, Unknown };
const char* outcome_key(Outcome outcome);

struct Witness {
  /// Residual component, e.g. "(L_X g)_yy".
  std::string component;
  std::array<double, 3> point{};
  std::map<std::string, double> params;
  double value = 0;
  /// Normalized residual expression that failed.
  std::string residual;
};

struct Verdict {
  Level level = Level::Killing;
  Outcome outcome = Outcome::Unknown;
  std::optional<Witness> witness;
  /// Residual components that could not be decided.
  std::vector<std::string> undecided;
  std::string note;
};

struct ClassificationReport {
  std::array<Verdict, 6> verdicts;
  /// Homothety factor read off the (t,y) slot of L_X g.
  std::optional<Expr> eta;
  /// A weaker level failed although a stronger one holds (a defect).
  bool inconsistent = false;

  const Verdict& at(Level level) const { return verdicts[static_cast<std::size_t>(level)]; }
  Verdict& at(Level level) { return verdicts[static_cast<std::size_t>(level)]; }
  bool holds(Level level) const { return at(level).outcome == Outcome::Holds; }
  /// Strongest level that holds, ignoring the trivial Weyl level.
  std::optional<Level> strongest() const;
  /// Holds at `level` and fails at the next stronger level.
  bool proper(Level level) const;
  bool decided() const;
};

struct ClassifyOptions {
  /// Extra constraints on function symbols of the field.
  sym::RuleSet rules;
  std::set<std::string> positive;
};

ClassificationReport classify(const WalkerManifold& w, const VectorField& x, const ClassifyOptions& options = {});
ClassificationReport classify(const WalkerManifold& w, const geo::Geometry& geo, const VectorField& x,
                              const ClassifyOptions& options = {});

/// Holds when every component of t vanishes; the first nonzero component
/// (labelled name + index) becomes the witness.
Verdict test_vanishing(Level level, const WalkerManifold& w, const geo::Tensor& t, const std::string& name);

/// Human-readable lines ("killing: holds", witnesses, eta).
std::vector<std::string> render_text(const ClassificationReport& report);

}  // namespace walker::cls
