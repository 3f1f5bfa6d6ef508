#pragma once

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "walker/symexpr/calculus.hpp"
#include "walker/symexpr/expr.hpp"

namespace walker::sym {

/// Elementary functions for a floating-point type. Specialize for extended
/// precision types.
template <class T>
struct Math;

template <>
struct Math<double> {
  static double exp(double v) { return std::exp(v); }
  static double sin(double v) { return std::sin(v); }
  static double cos(double v) { return std::cos(v); }
  static double sqrt(double v) { return std::sqrt(v); }
  static double fabs(double v) { return std::fabs(v); }
  static double pow(double b, double e) { return std::pow(b, e); }
  static bool finite(double v) { return std::isfinite(v); }
};

class EvalError : public std::runtime_error {
 public:
  EvalError(const std::string& what, std::string subtree)
      : std::runtime_error(what + " in '" + subtree + "'"), subtree_(std::move(subtree)) {}
  const std::string& subtree() const { return subtree_; }

 private:
  std::string subtree_;
};

/// Smooth numeric stand-ins for abstract function symbols. Each realization
/// is a closed-form expression in the symbol's own coordinate arguments, so
/// derivative orders are evaluated from exact derivatives of that expression.
class Realizations {
 public:
  void set(const std::string& name, const Expr& body);
  bool has(const std::string& name) const { return bodies_.count(name) > 0; }
  const Expr& body(const std::string& name) const;
  const std::map<std::string, Expr>& bodies() const { return bodies_; }

  /// Precomputes derivative bodies for every derivative order in `symbols`.
  void prepare(const SymbolSet& symbols);

  /// Derivative body for the given occurrence (computed on the fly when not
  /// prepared).
  Expr derivative(const std::string& name, const std::vector<int>& args, const std::vector<int>& orders) const;

 private:
  using Key = std::tuple<std::string, std::vector<int>, std::vector<int>>;
  std::map<std::string, Expr> bodies_;
  std::map<Key, Expr> cache_;
};

template <class T>
struct EvalContext {
  std::array<T, kDim> point{};
  std::map<std::string, T> params;
  const Realizations* realizations = nullptr;
};

template <class T>
T from_rational(const Rational& q) {
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
    return static_cast<T>(q.get_num().get_si()) / static_cast<T>(q.get_den().get_si());
  }
  return static_cast<T>(q.get_d());
}

template <class T>
T eval(const Expr& e, const EvalContext<T>& ctx);

namespace detail {

template <class T>
T checked(T v, const Expr& e) {
  if (!Math<T>::finite(v)) throw EvalError("non-finite value", to_string(e));
  return v;
}

template <class T>
T int_pow(T base, long k, const Expr& e) {
  if (k < 0) {
    if (base == T(0)) throw EvalError("division by zero", to_string(e));
    return T(1) / int_pow(base, -k, e);
  }
  T result = 1;
  while (k) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

}  // namespace detail

template <class T>
T eval(const Expr& e, const EvalContext<T>& ctx) {
  const Node& n = e.node();
  switch (n.kind) {
    case Kind::Number:
      return from_rational<T>(n.value);
    case Kind::Coord:
      return ctx.point[n.coord];
    case Kind::Param: {
      auto it = ctx.params.find(n.name);
      if (it == ctx.params.end()) throw EvalError("unbound parameter", n.name);
      return it->second;
    }
    case Kind::Func: {
      if (!ctx.realizations || !ctx.realizations->has(n.name)) {
        throw EvalError("unrealized function symbol", to_string(e));
      }
      return eval(ctx.realizations->derivative(n.name, n.args, n.orders), ctx);
    }
    case Kind::Add: {
      T acc = 0;
      for (const auto& c : n.children) acc += eval(c, ctx);
      return acc;
    }
    case Kind::Mul: {
      T acc = 1;
      for (const auto& c : n.children) acc *= eval(c, ctx);
      return acc;
    }
    case Kind::Pow: {
      T b = eval(n.children[0], ctx);
      const Rational& q = n.value;
      if (q.get_den() == 1) return detail::checked(detail::int_pow(b, q.get_num().get_si(), e), e);
      const bool odd_root = q.get_den().get_ui() % 2 == 1;
      if (b < T(0) && !odd_root) throw EvalError("even root of a negative value", to_string(e));
      if (b == T(0) && sgn(q) < 0) throw EvalError("division by zero", to_string(e));
      T mag = Math<T>::pow(Math<T>::fabs(b), from_rational<T>(q));
      if (b < T(0) && q.get_num().get_si() % 2 != 0) mag = -mag;
      return detail::checked(mag, e);
    }
    case Kind::Exp:
      return detail::checked(Math<T>::exp(eval(n.children[0], ctx)), e);
    case Kind::Sin:
      return Math<T>::sin(eval(n.children[0], ctx));
    case Kind::Cos:
      return Math<T>::cos(eval(n.children[0], ctx));
    case Kind::Sqrt: {
      T v = eval(n.children[0], ctx);
      if (v < T(0)) throw EvalError("sqrt of a negative value", to_string(e));
      return Math<T>::sqrt(v);
    }
    case Kind::Abs: {
      T v = eval(n.children[0], ctx);
      if (n.sign == Sign::Positive && v < T(0)) {
        throw EvalError("positive-branch assumption violated", to_string(e));
      }
      return Math<T>::fabs(v);
    }
  }
  throw EvalError("unknown node", to_string(e));
}

/// Double-precision evaluation at (t, x, y).
double eval_numeric(const Expr& e, const std::array<double, kDim>& point, const std::map<std::string, double>& params,
                    const Realizations* realizations = nullptr);

}  // namespace walker::sym
