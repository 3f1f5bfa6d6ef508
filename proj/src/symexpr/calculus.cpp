#include "walker/symexpr/calculus.hpp"

#include <algorithm>

#include "canonical.hpp"
#include "walker/symexpr/parse.hpp"

namespace walker::sym {

using detail::from_ratfunc;
using detail::to_ratfunc;

Expr normalize(const Expr& e) { return from_ratfunc(to_ratfunc(e)); }

bool normalizes_to_zero(const Expr& e) { return detail::rf_is_zero(to_ratfunc(e)); }

namespace {

Expr rebuild(const Expr& e, const std::vector<Expr>& children) {
  const Node& n = e.node();
  switch (n.kind) {
    case Kind::Add:
      return sum(children);
    case Kind::Mul:
      return product(children);
    case Kind::Pow:
      return pow(children[0], n.value);
    case Kind::Exp:
      return exp(children[0]);
    case Kind::Sin:
      return sin(children[0]);
    case Kind::Cos:
      return cos(children[0]);
    case Kind::Sqrt:
      return sqrt(children[0]);
    case Kind::Abs:
      return abs(children[0], n.sign);
    default:
      return e;
  }
}

template <class Fn>
Expr map_children(const Expr& e, Fn&& fn) {
  std::vector<Expr> kids;
  kids.reserve(e.children().size());
  for (const auto& c : e.children()) kids.push_back(fn(c));
  return rebuild(e, kids);
}

Expr raw_diff(const Expr& e, int v) {
  const Node& n = e.node();
  switch (n.kind) {
    case Kind::Number:
    case Kind::Param:
      return Expr();
    case Kind::Coord:
      return n.coord == v ? Expr(1) : Expr();
    case Kind::Func: {
      auto it = std::find(n.args.begin(), n.args.end(), v);
      if (it == n.args.end()) return Expr();
      std::vector<int> orders = n.orders;
      ++orders[static_cast<std::size_t>(it - n.args.begin())];
      return Expr::func(n.name, n.args, std::move(orders));
    }
    case Kind::Add: {
      Expr acc;
      for (const auto& c : n.children) acc = acc + raw_diff(c, v);
      return acc;
    }
    case Kind::Mul: {
      Expr acc;
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        Expr d = raw_diff(n.children[i], v);
        if (d.is_zero_literal()) continue;
        Expr term = d;
        for (std::size_t j = 0; j < n.children.size(); ++j) {
          if (j != i) term = term * n.children[j];
        }
        acc = acc + term;
      }
      return acc;
    }
    case Kind::Pow: {
      Expr d = raw_diff(n.children[0], v);
      if (d.is_zero_literal()) return Expr();
      return Expr(n.value) * pow(n.children[0], Rational(n.value - 1)) * d;
    }
    case Kind::Exp: {
      Expr d = raw_diff(n.children[0], v);
      return d.is_zero_literal() ? Expr() : e * d;
    }
    case Kind::Sin: {
      Expr d = raw_diff(n.children[0], v);
      return d.is_zero_literal() ? Expr() : cos(n.children[0]) * d;
    }
    case Kind::Cos: {
      Expr d = raw_diff(n.children[0], v);
      return d.is_zero_literal() ? Expr() : -sin(n.children[0]) * d;
    }
    case Kind::Sqrt: {
      Expr d = raw_diff(n.children[0], v);
      return d.is_zero_literal() ? Expr() : d * pow(e, -1) / Expr(2);
    }
    case Kind::Abs: {
      Expr d = raw_diff(n.children[0], v);
      if (d.is_zero_literal()) return Expr();
      if (n.sign == Sign::Positive) return d;
      return d * n.children[0] * pow(e, -1);
    }
  }
  return Expr();
}

Expr substitute_raw(const Expr& e, const Bindings& b) {
  const Node& n = e.node();
  switch (n.kind) {
    case Kind::Param: {
      auto it = b.find(n.name);
      return it == b.end() ? e : it->second;
    }
    case Kind::Func: {
      auto it = b.find(n.name);
      if (it == b.end()) return e;
      SymbolSet s = symbols_of(it->second);
      for (int c = 0; c < kDim; ++c) {
        if (s.coords[c] && std::find(n.args.begin(), n.args.end(), c) == n.args.end()) {
          throw SubstitutionError("binding for '" + n.name + "' depends on " + coord_name(c) +
                                  ", which is not among its arguments");
        }
      }
      return diff_orders(it->second, n.args, n.orders);
    }
    case Kind::Number:
    case Kind::Coord:
      return e;
    default:
      return map_children(e, [&](const Expr& c) { return substitute_raw(c, b); });
  }
}

bool dominates(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
  }
  return true;
}

bool rule_matches(const RewriteRule& r, const Node& n) {
  return n.kind == Kind::Func && n.name == r.symbol && n.args == r.args && dominates(n.orders, r.orders);
}

bool contains_target(const Expr& e, const RewriteRule& r) {
  if (rule_matches(r, e.node())) return true;
  for (const auto& c : e.children()) {
    if (contains_target(c, r)) return true;
  }
  return false;
}

Expr rewrite_once(const Expr& e, const RuleSet& rules, bool* changed) {
  const Node& n = e.node();
  if (n.kind == Kind::Func) {
    for (const auto& r : rules) {
      if (!rule_matches(r, n)) continue;
      std::vector<int> rest(n.orders.size());
      for (std::size_t i = 0; i < rest.size(); ++i) rest[i] = n.orders[i] - r.orders[i];
      *changed = true;
      return diff_orders(r.replacement, n.args, rest);
    }
    return e;
  }
  if (e.children().empty()) return e;
  return map_children(e, [&](const Expr& c) { return rewrite_once(c, rules, changed); });
}

bool positive_atom(const Expr& atom, const std::set<std::string>& names) {
  const Node& n = atom.node();
  switch (n.kind) {
    case Kind::Param:
      return names.count(n.name) > 0;
    case Kind::Func:
      return names.count(n.name) > 0 &&
             std::all_of(n.orders.begin(), n.orders.end(), [](int o) { return o == 0; });
    case Kind::Exp:
      return true;
    default:
      return false;
  }
}

bool provably_positive(const Expr& arg, const std::set<std::string>& names) {
  detail::RatFunc r = to_ratfunc(arg);
  if (r.num.size() != 1) return false;
  for (const auto& f : r.den) {
    if (f.mult % 2) return false;
  }
  const auto& [m, c] = *r.num.begin();
  if (sgn(c) <= 0) return false;
  for (const auto& f : m) {
    const Kind k = f.atom.kind();
    const bool root = k == Kind::Sqrt || (k == Kind::Pow && f.atom.value().get_den() != 1);
    if (f.exp % 2 == 0 && !root) continue;
    if (!positive_atom(f.atom, names) && !(root && provably_positive(f.atom.children()[0], names))) return false;
  }
  return true;
}

Expr mark_positive(const Expr& e, const std::set<std::string>& names) {
  if (e.children().empty()) return e;
  Expr rebuilt = map_children(e, [&](const Expr& c) { return mark_positive(c, names); });
  if (rebuilt.kind() == Kind::Abs && rebuilt.node().sign != Sign::Positive &&
      provably_positive(rebuilt.children()[0], names)) {
    return abs(rebuilt.children()[0], Sign::Positive);
  }
  return rebuilt;
}

}  // namespace

Expr diff(const Expr& e, int coord, int times) {
  if (coord < 0 || coord >= kDim) throw std::out_of_range("diff: coordinate index");
  Expr acc = e;
  for (int i = 0; i < times; ++i) acc = normalize(raw_diff(acc, coord));
  return times == 0 ? normalize(acc) : acc;
}

Expr diff_orders(const Expr& e, const std::vector<int>& args, const std::vector<int>& orders) {
  Expr acc = e;
  bool any = false;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (orders[i] > 0) {
      acc = diff(acc, args[i], orders[i]);
      any = true;
    }
  }
  return any ? acc : e;
}

Expr substitute(const Expr& e, const Bindings& bindings) { return normalize(substitute_raw(e, bindings)); }

RewriteRule RewriteRule::make(const Expr& target, const Expr& replacement) {
  if (target.kind() != Kind::Func) throw std::invalid_argument("rewrite rule target must be a function symbol");
  RewriteRule r;
  r.symbol = target.name();
  r.args = target.node().args;
  r.orders = target.node().orders;
  r.replacement = normalize(replacement);
  if (contains_target(r.replacement, r)) {
    throw std::invalid_argument("rewrite rule for " + to_string(target) + " reintroduces its own target");
  }
  return r;
}

RewriteRule RewriteRule::parse(const std::string& text) {
  std::size_t split = text.find("->");
  std::size_t width = 2;
  if (split == std::string::npos) {
    split = text.find('=');
    width = 1;
  }
  if (split == std::string::npos) throw std::invalid_argument("rewrite rule needs 'lhs -> rhs': " + text);
  return make(sym::parse(text.substr(0, split)), sym::parse(text.substr(split + width)));
}

std::string RewriteRule::str() const {
  return to_string(Expr::func(symbol, args, orders)) + " -> " + to_string(replacement);
}

Expr apply_rules(const Expr& e, const RuleSet& rules) {
  Expr acc = normalize(e);
  if (rules.empty()) return acc;
  for (int pass = 0; pass < 64; ++pass) {
    bool changed = false;
    Expr next = rewrite_once(acc, rules, &changed);
    if (!changed) return acc;
    acc = normalize(next);
  }
  throw std::logic_error("rewrite rules did not reach a fixpoint");
}

Expr assume_positive(const Expr& e, const std::set<std::string>& positive_symbols) {
  return mark_positive(e, positive_symbols);
}

}  // namespace walker::sym
