#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "walker/classifier/families.hpp"

namespace walker::cls {

struct VerifyOptions {
  std::uint64_t seed = 1;
  /// Restricts the run to one family (and the checks tied to it).
  std::optional<FamilyTag> family;
  /// Deliberately misstates one claim; the run must then fail.
  bool inject_fault = false;
  /// Overrides the zero-test tolerance when set.
  std::optional<double> tolerance;
};

/// Smallest witness magnitude accepted as evidence of failure.
inline constexpr double kMinWitness = 1e-3;

struct CheckRecord {
  /// family, theorem, resolution, infinite, consistency, rank.
  std::string section;
  /// Family instance or theorem clause.
  std::string subject;
  /// Generator or check name.
  std::string item;
  /// Level key, empty when not tied to one level.
  std::string level;
  std::string expected;
  std::string observed;
  bool passed = false;
  std::optional<Witness> witness;
  std::string eta;
  std::string detail;
};

/// A typesetting ambiguity decided by the vanishing of L_X R.
struct Resolution {
  std::string clause;
  std::string reading_a;
  std::string reading_b;
  Outcome outcome_a = Outcome::Unknown;
  Outcome outcome_b = Outcome::Unknown;
  /// "a", "b" or "none".
  std::string adopted;
};

struct VerifyReport {
  std::vector<CheckRecord> checks;
  std::vector<Resolution> resolutions;

  std::size_t failures() const;
  bool passed() const { return failures() == 0 && !checks.empty(); }
};

VerifyReport verify_theorems(const VerifyOptions& options = {});

}  // namespace walker::cls
