#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "walker/symexpr/expr.hpp"

namespace walker::sym {

/// Canonical form: rational normal form over Q with exp/sin/cos/sqrt/abs and
/// function-symbol applications as atoms. Deterministic and idempotent.
Expr normalize(const Expr& e);

/// True when the canonical form is the literal 0.
bool normalizes_to_zero(const Expr& e);

/// Exact partial derivative with respect to a coordinate, normalized.
Expr diff(const Expr& e, int coord, int times = 1);

/// Applies the derivative multi-order `orders` (one entry per coordinate in
/// `args`) to `e`.
Expr diff_orders(const Expr& e, const std::vector<int>& args, const std::vector<int>& orders);

/// Parameter and function-symbol replacements keyed by name.
using Bindings = std::map<std::string, Expr>;

class SubstitutionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Replaces parameters and function symbols. A function-symbol binding must be
/// an expression in that symbol's arguments; stored derivative orders are
/// applied to the replacement after substitution.
Expr substitute(const Expr& e, const Bindings& bindings);

/// Rewrite rule eliminating a derivative of a function symbol, e.g.
/// alpha'(y) -> c*alpha(y)^(3/2). Any occurrence whose derivative order
/// dominates the target is rewritten to the matching derivative of the
/// replacement.
struct RewriteRule {
  std::string symbol;
  std::vector<int> args;
  std::vector<int> orders;
  Expr replacement;

  /// Builds a rule from a target function-symbol occurrence such as the
  /// parse of "h''(y)". Throws std::invalid_argument when the replacement
  /// still contains the target order (the rule would not terminate).
  static RewriteRule make(const Expr& target, const Expr& replacement);
  /// Parses "lhs -> rhs".
  static RewriteRule parse(const std::string& text);

  std::string str() const;
};

using RuleSet = std::vector<RewriteRule>;

/// Applies rules to a fixpoint and normalizes.
Expr apply_rules(const Expr& e, const RuleSet& rules);

/// Marks abs() nodes whose argument is a positive multiple of a product of the
/// named symbols (parameters or function symbols, underived), exponentials,
/// even powers and even powers of denominators as positive, so |u|
/// normalizes to u.
Expr assume_positive(const Expr& e, const std::set<std::string>& positive_symbols);

}  // namespace walker::sym
