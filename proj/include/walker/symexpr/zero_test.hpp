#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "walker/symexpr/calculus.hpp"
#include "walker/symexpr/expr.hpp"

namespace walker::sym {

enum class Trilean { Zero, NonZero, Unknown };

const char* to_string(Trilean v);

struct ZeroTestOptions {
  int probes = 100;
  int realizations = 5;
  /// Absolute tolerance, scaled by the magnitude of the summands at a probe.
  double tolerance = 1e-9;
  std::uint64_t seed = 0x5eedULL;
  /// Probe box half-width around the origin.
  double box = 1.0;
  /// Symbols realized as positive functions or parameters.
  std::set<std::string> positive;
};

struct Witness {
  std::array<double, kDim> point{};
  std::map<std::string, double> params;
  double value = 0;
};

struct ZeroTestResult {
  Trilean verdict = Trilean::Unknown;
  /// Rewritten and normalized expression that was tested.
  Expr reduced;
  std::optional<Witness> witness;
  /// Probes that evaluated without a domain error.
  int evaluated = 0;
};

/// Applies the rules, normalizes, and decides vanishing. NonZero always comes
/// with a witness; an expression that survives normalization but vanishes at
/// every probe is Unknown.
ZeroTestResult zero_test(const Expr& e, const RuleSet& rules = {}, const ZeroTestOptions& options = {});

inline Trilean is_zero(const Expr& e, const RuleSet& rules = {}, const ZeroTestOptions& options = {}) {
  return zero_test(e, rules, options).verdict;
}

}  // namespace walker::sym
