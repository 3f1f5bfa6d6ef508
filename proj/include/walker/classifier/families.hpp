#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "walker/classifier/classify.hpp"

namespace walker::cls {

enum class FamilyTag { Nb, Pc, CW, ConformallyFlat };

const char* family_key(FamilyTag tag);  // "Nb", "Pc", "CW", "cflat"
std::optional<FamilyTag> parse_family(const std::string& text);

struct FamilyParams {
  sym::Rational b = 1;
  int eps = 1;
  sym::Rational c = 1;
  /// For P_c: use the explicit solution alpha = 4/(k - c y)^2 instead of a
  /// symbolic alpha with the rule alpha' -> c alpha^(3/2).
  std::optional<sym::Rational> k;
};

class FamilyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SideConstraint {
  std::string name;
  geo::Expr residual;  // required to vanish
};

struct Generator {
  std::string name;
  lie::VectorField field;
  /// Level at which the generator is claimed to be a symmetry.
  Level claim = Level::Killing;
  /// The next stronger level is claimed to fail.
  bool proper = false;
  /// Constraints on the generator's function symbols.
  sym::RuleSet rules;
  std::set<std::string> positive;
  std::vector<SideConstraint> constraints;

  ClassifyOptions options() const { return {rules, positive}; }
};

struct SymmetryFamily {
  FamilyTag tag = FamilyTag::Nb;
  std::string name;
  FamilyParams params;
  geo::WalkerManifold manifold;
  std::vector<Generator> generators;
};

/// Generators of every symmetry level for the family, with free constants as
/// parameters and free functions as function symbols. Throws FamilyError on
/// invalid parameters (b = 0, eps not +-1, k - c y degenerate).
SymmetryFamily generate_family(FamilyTag tag, const FamilyParams& params = {});

/// Next stronger level (Killing has none).
std::optional<Level> stronger(Level level);

}  // namespace walker::cls
