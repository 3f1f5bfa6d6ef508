#include "canonical.hpp"

#include <algorithm>
#include <stdexcept>

namespace walker::sym::detail {

namespace {

// Guards against runaway mutual recursion between finish() and reduce().
thread_local int g_depth = 0;

struct DepthGuard {
  DepthGuard() {
    if (++g_depth > 400) {
      --g_depth;
      throw std::logic_error("canonical form: normalization did not terminate");
    }
  }
  ~DepthGuard() { --g_depth; }
};

const Monomial kUnit{};

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? 1 : j == b.size() ? -1 : compare(a[i].atom, b[j].atom);
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
    } else {
      int e = a[i].exp + b[j].exp;
      if (e != 0) out.push_back({a[i].atom, e});
      ++i;
      ++j;
    }
  }
  return out;
}

Monomial mono_inv(const Monomial& a) {
  Monomial out = a;
  for (auto& f : out) f.exp = -f.exp;
  return out;
}

void add_term(Poly& p, const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = p.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) p.erase(it);
  }
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [m, c] : b) add_term(out, m, c);
  return out;
}

Poly poly_scale(const Poly& a, const Rational& s) {
  if (sgn(s) == 0) return {};
  Poly out;
  for (const auto& [m, c] : a) out.emplace_hint(out.end(), m, c * s);
  return out;
}

Poly poly_mul_term(const Poly& a, const Monomial& m, const Rational& s) {
  Poly out;
  for (const auto& [am, c] : a) add_term(out, mono_mul(am, m), c * s);
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  if (poly_is_one(a)) return b;
  if (poly_is_one(b)) return a;
  Poly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) add_term(out, mono_mul(ma, mb), ca * cb);
  }
  return out;
}

int root_index(const Expr& atom) {
  if (atom.kind() == Kind::Sqrt) return 2;
  if (atom.kind() == Kind::Pow) {
    const Rational& q = atom.value();
    if (q.get_num() == 1 && q.get_den() > 1) return static_cast<int>(q.get_den().get_si());
  }
  return 0;
}

const Expr& root_base(const Expr& atom) { return atom.children()[0]; }

bool term_reducible(const Monomial& m) {
  int exp_atoms = 0;
  for (const auto& f : m) {
    switch (f.atom.kind()) {
      case Kind::Exp:
        ++exp_atoms;
        if (f.exp != 1) return true;
        break;
      case Kind::Sin:
        if (f.exp >= 2) return true;
        break;
      case Kind::Abs:
        if (f.exp != 1) return true;
        break;
      default: {
        int n = root_index(f.atom);
        if (n && (f.exp < 0 || f.exp >= n)) return true;
      }
    }
  }
  return exp_atoms > 1;
}

bool needs_reduce(const Poly& p) {
  for (const auto& [m, c] : p) {
    if (term_reducible(m)) return true;
  }
  return false;
}

RatFunc rf_poly(Poly p) { return {std::move(p), {}}; }

RatFunc reduce(const Poly& p);

Den den_merge(const Den& a, const Den& b) {
  Den out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? 1 : j == b.size() ? -1 : compare_poly(a[i].poly, b[j].poly);
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
    } else {
      out.push_back({a[i].poly, a[i].mult + b[j].mult});
      ++i;
      ++j;
    }
  }
  return out;
}

Poly poly_pow(const Poly& p, int k) {
  Poly out = poly_const(1);
  for (int i = 0; i < k; ++i) out = poly_mul(out, p);
  return out;
}

// Product of the factors of `have` missing from `want` (with multiplicity).
Poly den_cofactor(const Den& want, const Den& have) {
  Poly out = poly_const(1);
  std::size_t j = 0;
  for (const auto& w : want) {
    while (j < have.size() && compare_poly(have[j].poly, w.poly) < 0) ++j;
    int got = j < have.size() && compare_poly(have[j].poly, w.poly) == 0 ? have[j].mult : 0;
    if (w.mult > got) out = poly_mul(out, poly_pow(w.poly, w.mult - got));
  }
  return out;
}

Den den_lcm(const Den& a, const Den& b) {
  Den out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? 1 : j == b.size() ? -1 : compare_poly(a[i].poly, b[j].poly);
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
    } else {
      out.push_back({a[i].poly, std::max(a[i].mult, b[j].mult)});
      ++i;
      ++j;
    }
  }
  return out;
}

Poly den_expand(const Den& d) {
  Poly out = poly_const(1);
  for (const auto& f : d) out = poly_mul(out, poly_pow(f.poly, f.mult));
  return out;
}

// Exact division in the lexicographic Laurent order. Returns false when the
// division leaves a remainder (or does not settle within the step budget).
bool poly_divide(const Poly& num, const Poly& den, Poly* quotient) {
  const auto& [lead_m, lead_c] = *den.rbegin();
  const Monomial floor_m = mono_mul(num.begin()->first, mono_inv(den.begin()->first));
  Poly rem = num;
  Poly q;
  const std::size_t limit = 16 + 2 * num.size();
  for (std::size_t step = 0; !rem.empty(); ++step) {
    if (step > limit) return false;
    const auto [rm, rc] = *rem.rbegin();
    Monomial qm = mono_mul(rm, mono_inv(lead_m));
    if (compare_monomial(qm, floor_m) < 0) return false;
    Rational qc = rc / lead_c;
    add_term(q, qm, qc);
    for (const auto& [dm, dc] : den) add_term(rem, mono_mul(dm, qm), -dc * qc);
  }
  *quotient = std::move(q);
  return true;
}

constexpr std::size_t kDivideNumLimit = 256;
constexpr std::size_t kDivideDenLimit = 32;

// Brings a numerator over a factored denominator into normal form: reduces
// the numerator terms and cancels denominator factors that divide exactly.
RatFunc finish(Poly num, Den den) {
  DepthGuard guard;
  if (num.empty()) return rf_const(0);
  if (needs_reduce(num)) {
    RatFunc r = reduce(num);
    if (r.num.empty()) return rf_const(0);
    num = std::move(r.num);
    if (!r.den.empty()) den = den_merge(den, r.den);
  }
  if (num.size() <= kDivideNumLimit) {
    for (std::size_t i = 0; i < den.size();) {
      Poly q;
      if (den[i].poly.size() <= kDivideDenLimit && poly_divide(num, den[i].poly, &q)) {
        num = std::move(q);
        if (--den[i].mult == 0) den.erase(den.begin() + static_cast<long>(i));
        if (needs_reduce(num)) return finish(std::move(num), std::move(den));
        continue;
      }
      ++i;
    }
  }
  return {std::move(num), std::move(den)};
}

// Splits a nonzero reduced polynomial into content monomial, leading
// coefficient and a normalized multi-term factor (empty when p is a
// single term).
void split_factor(const Poly& p, Monomial* content, Rational* lc, Poly* factor) {
  if (p.size() == 1) {
    *content = p.begin()->first;
    *lc = p.begin()->second;
    factor->clear();
    return;
  }
  std::map<Expr, int, ExprLess> lows;
  bool first = true;
  for (const auto& [m, c] : p) {
    if (first) {
      for (const auto& f : m) lows[f.atom] = f.exp;
      first = false;
      continue;
    }
    for (auto& [atom, e] : lows) {
      int here = 0;
      for (const auto& f : m) {
        if (same(f.atom, atom)) {
          here = f.exp;
          break;
        }
      }
      e = std::min(e, here);
    }
    for (const auto& f : m) {
      if (!lows.count(f.atom)) lows[f.atom] = std::min(0, f.exp);
    }
  }
  content->clear();
  for (const auto& [atom, e] : lows) {
    if (e != 0) content->push_back({atom, e});
  }
  *lc = p.rbegin()->second;
  *factor = poly_mul_term(p, mono_inv(*content), Rational(1 / *lc));
}

RatFunc rf_inv(const RatFunc& b) {
  if (b.num.empty()) throw std::domain_error("division by zero");
  Monomial content;
  Rational lc;
  Poly factor;
  split_factor(b.num, &content, &lc, &factor);
  Poly num = poly_mul_term(den_expand(b.den), mono_inv(content), Rational(1 / lc));
  Den den;
  if (!factor.empty()) den.push_back({std::move(factor), 1});
  return finish(std::move(num), std::move(den));
}

Expr make_exp_atom(const RatFunc& arg);

RatFunc exp_of(const RatFunc& arg) {
  if (rf_is_zero(arg)) return rf_const(1);
  return rf_atom(make_exp_atom(arg));
}

Expr make_exp_atom(const RatFunc& arg) {
  Node n;
  n.kind = Kind::Exp;
  n.children = {from_ratfunc(arg)};
  return Expr::make(std::move(n));
}

Expr unary_atom(Kind kind, const Expr& canonical_arg) {
  Node n;
  n.kind = kind;
  n.children = {canonical_arg};
  return Expr::make(std::move(n));
}

RatFunc reduce_term(const Monomial& m, const Rational& c) {
  Monomial plain;
  RatFunc extra = rf_const(c);
  RatFunc exp_arg = rf_const(0);
  bool has_exp = false;
  for (const auto& f : m) {
    const Expr& a = f.atom;
    switch (a.kind()) {
      case Kind::Exp:
        exp_arg = rf_add(exp_arg, rf_mul(rf_const(f.exp), to_ratfunc(a.children()[0])));
        has_exp = true;
        break;
      case Kind::Sin:
        if (f.exp >= 2) {
          if (f.exp > 2) plain.push_back({a, f.exp - 2});
          Expr c_atom = unary_atom(Kind::Cos, a.children()[0]);
          Poly pyth = poly_const(1);
          add_term(pyth, Monomial{{c_atom, 2}}, Rational(-1));
          extra = rf_mul(extra, rf_poly(std::move(pyth)));
        } else {
          plain.push_back(f);
        }
        break;
      case Kind::Abs:
        if (f.exp != 1) {
          RatFunc u = to_ratfunc(a.children()[0]);
          if (f.exp % 2 == 0) {
            extra = rf_mul(extra, rf_pow(u, f.exp));
          } else {
            extra = rf_mul(extra, rf_pow(u, f.exp - 1));
            plain.push_back({a, 1});
          }
        } else {
          plain.push_back(f);
        }
        break;
      default: {
        int n = root_index(a);
        if (n && (f.exp < 0 || f.exp >= n)) {
          int q = f.exp >= 0 ? f.exp / n : -((-f.exp + n - 1) / n);
          int r = f.exp - q * n;
          extra = rf_mul(extra, rf_pow(to_ratfunc(root_base(a)), q));
          if (r) plain.push_back({a, r});
        } else {
          plain.push_back(f);
        }
      }
    }
  }
  RatFunc out = rf_mul(rf_poly(Poly{{plain, Rational(1)}}), extra);
  if (has_exp) out = rf_mul(out, exp_of(exp_arg));
  return out;
}

RatFunc reduce(const Poly& p) {
  DepthGuard guard;
  Poly plain;
  RatFunc acc = rf_const(0);
  for (const auto& [m, c] : p) {
    if (term_reducible(m)) {
      acc = rf_add(acc, reduce_term(m, c));
    } else {
      add_term(plain, m, c);
    }
  }
  return rf_add(rf_poly(std::move(plain)), acc);
}

int leading_sign(const RatFunc& r) {
  if (r.num.empty()) return 0;
  return sgn(r.num.rbegin()->second);
}

bool perfect_root(const mpz_class& v, int n, mpz_class* out) {
  if (sgn(v) < 0) return false;
  return mpz_root(out->get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(n)) != 0;
}

RatFunc make_root(const RatFunc& u, int n) {
  Rational c;
  if (rf_constant(u, &c)) {
    if (sgn(c) == 0) return rf_const(0);
    mpz_class rn, rd;
    if (perfect_root(c.get_num(), n, &rn) && perfect_root(c.get_den(), n, &rd)) {
      Rational r(rn, rd);
      r.canonicalize();
      return rf_const(r);
    }
  }
  // root(c * exp(a)) = root(c) * exp(a / n) for perfect-power c > 0.
  if (u.den.empty() && u.num.size() == 1) {
    const auto& [m, coef] = *u.num.begin();
    if (m.size() == 1 && m[0].atom.kind() == Kind::Exp && m[0].exp == 1 && sgn(coef) > 0) {
      mpz_class rn, rd;
      if (perfect_root(coef.get_num(), n, &rn) && perfect_root(coef.get_den(), n, &rd)) {
        Rational r(rn, rd);
        r.canonicalize();
        RatFunc arg = rf_mul(rf_const(Rational(1, n)), to_ratfunc(m[0].atom.children()[0]));
        return rf_mul(rf_const(r), exp_of(arg));
      }
    }
  }
  Expr base = from_ratfunc(u);
  if (n == 2) return rf_atom(unary_atom(Kind::Sqrt, base));
  Node node;
  node.kind = Kind::Pow;
  node.value = Rational(1, n);
  node.children = {base};
  return rf_atom(Expr::make(std::move(node)));
}

Expr poly_to_expr(const Poly& p) {
  std::vector<Expr> terms;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    const auto& [m, c] = *it;
    std::vector<Expr> factors;
    factors.push_back(Expr(c));
    for (const auto& f : m) factors.push_back(f.exp == 1 ? f.atom : pow(f.atom, f.exp));
    Expr term;
    if (factors.size() == 1) {
      term = factors[0];
    } else if (c == 1 && factors.size() == 2) {
      term = factors[1];
    } else {
      Node n;
      n.kind = Kind::Mul;
      if (c == 1) {
        n.children.assign(factors.begin() + 1, factors.end());
      } else {
        n.children = std::move(factors);
      }
      term = Expr::make(std::move(n));
    }
    terms.push_back(term);
  }
  if (terms.empty()) return Expr();
  if (terms.size() == 1) return terms[0];
  Node n;
  n.kind = Kind::Add;
  n.children = std::move(terms);
  return Expr::make(std::move(n));
}

}  // namespace

int compare_monomial(const Monomial& a, const Monomial& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? 1 : j == b.size() ? -1 : compare(a[i].atom, b[j].atom);
    if (c < 0) return a[i].exp > 0 ? 1 : -1;
    if (c > 0) return b[j].exp > 0 ? -1 : 1;
    if (a[i].exp != b[j].exp) return a[i].exp > b[j].exp ? 1 : -1;
    ++i;
    ++j;
  }
  return 0;
}

Poly poly_const(const Rational& c) {
  Poly p;
  if (sgn(c) != 0) p.emplace(kUnit, c);
  return p;
}

Poly poly_atom(const Expr& atom, int exp) {
  Poly p;
  p.emplace(Monomial{{atom, exp}}, Rational(1));
  return p;
}

bool poly_is_one(const Poly& p) { return p.size() == 1 && p.begin()->first.empty() && p.begin()->second == 1; }

bool poly_equal(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return false;
  auto ib = b.begin();
  for (auto ia = a.begin(); ia != a.end(); ++ia, ++ib) {
    if (compare_monomial(ia->first, ib->first) != 0 || ia->second != ib->second) return false;
  }
  return true;
}

int compare_poly(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  auto ib = b.begin();
  for (auto ia = a.begin(); ia != a.end(); ++ia, ++ib) {
    int c = compare_monomial(ia->first, ib->first);
    if (c != 0) return c;
    int v = cmp(ia->second, ib->second);
    if (v != 0) return v < 0 ? -1 : 1;
  }
  return 0;
}

RatFunc rf_const(const Rational& c) { return {poly_const(c), {}}; }

RatFunc rf_atom(const Expr& atom) { return {poly_atom(atom), {}}; }

bool rf_is_zero(const RatFunc& a) { return a.num.empty(); }

bool rf_constant(const RatFunc& a, Rational* out) {
  if (!a.den.empty()) return false;
  if (a.num.empty()) {
    *out = 0;
    return true;
  }
  if (a.num.size() == 1 && a.num.begin()->first.empty()) {
    *out = a.num.begin()->second;
    return true;
  }
  return false;
}

RatFunc rf_add(const RatFunc& a, const RatFunc& b) {
  if (a.num.empty()) return b;
  if (b.num.empty()) return a;
  if (a.den.empty() && b.den.empty()) {
    Poly n = poly_add(a.num, b.num);
    return n.empty() ? rf_const(0) : rf_poly(std::move(n));
  }
  Den l = den_lcm(a.den, b.den);
  Poly n = poly_add(poly_mul(a.num, den_cofactor(l, a.den)), poly_mul(b.num, den_cofactor(l, b.den)));
  return finish(std::move(n), std::move(l));
}

RatFunc rf_neg(const RatFunc& a) { return {poly_scale(a.num, -1), a.den}; }

RatFunc rf_mul(const RatFunc& a, const RatFunc& b) {
  if (a.num.empty() || b.num.empty()) return rf_const(0);
  return finish(poly_mul(a.num, b.num), den_merge(a.den, b.den));
}

RatFunc rf_div(const RatFunc& a, const RatFunc& b) {
  if (b.num.empty()) throw std::domain_error("division by zero");
  if (a.num.empty()) return rf_const(0);
  return rf_mul(a, rf_inv(b));
}

RatFunc rf_pow(const RatFunc& a, long k) {
  if (k == 0) return rf_const(1);
  if (k < 0) return rf_pow(rf_inv(a), -k);
  RatFunc result = rf_const(1);
  RatFunc base = a;
  while (k) {
    if (k & 1) result = rf_mul(result, base);
    k >>= 1;
    if (k) base = rf_mul(base, base);
  }
  return result;
}

RatFunc to_ratfunc(const Expr& e) {
  const Node& n = e.node();
  switch (n.kind) {
    case Kind::Number:
      return rf_const(n.value);
    case Kind::Coord:
    case Kind::Param:
    case Kind::Func:
      return rf_atom(e);
    case Kind::Add: {
      RatFunc acc = rf_const(0);
      for (const auto& c : n.children) acc = rf_add(acc, to_ratfunc(c));
      return acc;
    }
    case Kind::Mul: {
      RatFunc acc = rf_const(1);
      for (const auto& c : n.children) {
        acc = rf_mul(acc, to_ratfunc(c));
        if (rf_is_zero(acc)) break;
      }
      return acc;
    }
    case Kind::Pow: {
      const Rational& q = n.value;
      RatFunc base = to_ratfunc(n.children[0]);
      if (q.get_den() == 1) return rf_pow(base, q.get_num().get_si());
      if (!q.get_den().fits_sint_p() || !q.get_num().fits_slong_p()) throw std::domain_error("exponent too large");
      RatFunc root = make_root(base, static_cast<int>(q.get_den().get_si()));
      return rf_pow(root, q.get_num().get_si());
    }
    case Kind::Exp:
      return exp_of(to_ratfunc(n.children[0]));
    case Kind::Sin: {
      RatFunc a = to_ratfunc(n.children[0]);
      if (rf_is_zero(a)) return rf_const(0);
      if (leading_sign(a) < 0) return rf_neg(rf_atom(unary_atom(Kind::Sin, from_ratfunc(rf_neg(a)))));
      return rf_atom(unary_atom(Kind::Sin, from_ratfunc(a)));
    }
    case Kind::Cos: {
      RatFunc a = to_ratfunc(n.children[0]);
      if (rf_is_zero(a)) return rf_const(1);
      if (leading_sign(a) < 0) a = rf_neg(a);
      return rf_atom(unary_atom(Kind::Cos, from_ratfunc(a)));
    }
    case Kind::Sqrt:
      return make_root(to_ratfunc(n.children[0]), 2);
    case Kind::Abs: {
      RatFunc a = to_ratfunc(n.children[0]);
      if (n.sign == Sign::Positive) return a;
      Rational c;
      if (rf_constant(a, &c)) return rf_const(::abs(c));
      if (leading_sign(a) < 0) a = rf_neg(a);
      return rf_atom(unary_atom(Kind::Abs, from_ratfunc(a)));
    }
  }
  throw std::logic_error("to_ratfunc: unknown node kind");
}

Expr from_ratfunc(const RatFunc& r) {
  Expr num = poly_to_expr(r.num);
  if (r.den.empty()) return num;
  Node n;
  n.kind = Kind::Mul;
  n.children.push_back(num);
  for (const auto& f : r.den) n.children.push_back(pow(poly_to_expr(f.poly), -f.mult));
  return Expr::make(std::move(n));
}

}  // namespace walker::sym::detail
