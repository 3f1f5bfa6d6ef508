#pragma once

// Rational normal form over Q in atoms (coordinates, parameters, function
// symbol applications, exp/sin/cos/root/abs of canonical arguments).
// Numerators are Laurent polynomials. Denominators are kept as a sorted list
// of multi-term polynomial factors, each with no monomial content and leading
// coefficient 1, raised to positive multiplicities.

#include <map>
#include <utility>
#include <vector>

#include "walker/symexpr/expr.hpp"

namespace walker::sym::detail {

struct Factor {
  Expr atom;
  int exp;
};

using Monomial = std::vector<Factor>;  // sorted by atom, exponents nonzero

int compare_monomial(const Monomial& a, const Monomial& b);

struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare_monomial(a, b) < 0; }
};

using Poly = std::map<Monomial, Rational, MonoLess>;

int compare_poly(const Poly& a, const Poly& b);

struct DenFactor {
  Poly poly;
  int mult;
};

using Den = std::vector<DenFactor>;  // sorted by compare_poly, empty for polynomials

struct RatFunc {
  Poly num;
  Den den;
};

Poly poly_const(const Rational& c);
Poly poly_atom(const Expr& atom, int exp = 1);
bool poly_is_one(const Poly& p);
bool poly_equal(const Poly& a, const Poly& b);

RatFunc rf_const(const Rational& c);
RatFunc rf_atom(const Expr& atom);
RatFunc rf_add(const RatFunc& a, const RatFunc& b);
RatFunc rf_neg(const RatFunc& a);
RatFunc rf_mul(const RatFunc& a, const RatFunc& b);
RatFunc rf_div(const RatFunc& a, const RatFunc& b);
RatFunc rf_pow(const RatFunc& a, long k);
bool rf_is_zero(const RatFunc& a);
/// Constant value when the function is a rational literal.
bool rf_constant(const RatFunc& a, Rational* out);

RatFunc to_ratfunc(const Expr& e);
Expr from_ratfunc(const RatFunc& r);

}  // namespace walker::sym::detail
