#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "walker/symexpr/calculus.hpp"
#include "walker/symexpr/expr.hpp"
#include "walker/symexpr/zero_test.hpp"

namespace walker::geo {

using sym::Expr;
using sym::Trilean;

class ManifoldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ManifoldOptions {
  /// Numeric values substituted for parameters of f.
  std::map<std::string, sym::Rational> params;
  /// Parameters and function symbols assumed positive (abs/sqrt branches and
  /// probe realizations).
  std::set<std::string> positive;
  /// Constraints on function symbols, applied before every zero test.
  sym::RuleSet rules;
  sym::ZeroTestOptions zero;
};

/// Strictly Walker three-manifold with metric ((0,0,1),(0,1,0),(1,0,f)).
class WalkerManifold {
 public:
  const Expr& f() const { return f_; }
  /// Partial derivative of f, nx times in x and ny times in y.
  Expr f_d(int nx, int ny) const;

  const std::map<std::string, sym::Rational>& params() const { return params_; }
  const std::set<std::string>& positive() const { return positive_; }
  const sym::RuleSet& rules() const { return rules_; }
  const sym::ZeroTestOptions& zero_options() const { return zero_; }

  /// Status of f_xx != 0.
  Trilean curvature_status() const { return fxx_status_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Binds parameters, applies positivity and rules, normalizes.
  Expr simplify(const Expr& e) const;
  sym::ZeroTestResult zero_test(const Expr& e) const;
  Trilean is_zero(const Expr& e) const { return zero_test(e).verdict; }

  /// Substitutes the numeric parameter bindings.
  Expr bind(const Expr& e) const;

  /// Copy with additional rules and positivity assumptions (e.g. constraints
  /// on the function symbols of a vector field).
  WalkerManifold with_assumptions(const sym::RuleSet& rules, const std::set<std::string>& positive = {}) const;
  /// Copies with a different zero-test seed or tolerance.
  WalkerManifold with_seed(std::uint64_t seed) const;
  WalkerManifold with_tolerance(double tolerance) const;

 private:
  friend WalkerManifold build_manifold(const Expr& f, const ManifoldOptions& options);

  Expr f_;
  std::map<std::string, sym::Rational> params_;
  std::set<std::string> positive_;
  sym::RuleSet rules_;
  sym::ZeroTestOptions zero_;
  Trilean fxx_status_ = Trilean::Unknown;
  std::vector<std::string> warnings_;
};

/// Validates f (no t dependence, not flat) and records assumptions.
/// Throws ManifoldError on invalid input and sym::ParseError on bad text.
WalkerManifold build_manifold(const Expr& f, const ManifoldOptions& options = {});
WalkerManifold build_manifold(std::string_view f_text, const ManifoldOptions& options = {});

}  // namespace walker::geo
