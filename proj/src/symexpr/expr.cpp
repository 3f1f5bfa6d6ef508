#include "walker/symexpr/expr.hpp"

#include <algorithm>
#include <sstream>

namespace walker::sym {

const char* coord_name(int coord) {
  static const char* names[kDim] = {"t", "x", "y"};
  if (coord < 0 || coord >= kDim) throw std::out_of_range("coordinate index");
  return names[coord];
}

namespace {

std::shared_ptr<const Node> number_node(const Rational& v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->value = v;
  return n;
}

const std::shared_ptr<const Node>& zero_node() {
  static const auto node = number_node(0);
  return node;
}

const std::shared_ptr<const Node>& one_node() {
  static const auto node = number_node(1);
  return node;
}

Expr unary(Kind kind, const Expr& arg) {
  Node n;
  n.kind = kind;
  n.children = {arg};
  return Expr::make(std::move(n));
}

}  // namespace

Expr::Expr() : node_(zero_node()) {}

Expr::Expr(int value) : node_(value == 0 ? zero_node() : value == 1 ? one_node() : number_node(value)) {}

Expr::Expr(const Rational& value) : node_(number_node(value)) {}

Expr Expr::number(const Rational& value) { return Expr(value); }

Expr Expr::coord(int index) {
  if (index < 0 || index >= kDim) throw std::out_of_range("coordinate index");
  Node n;
  n.kind = Kind::Coord;
  n.coord = index;
  return make(std::move(n));
}

Expr Expr::param(std::string name) {
  Node n;
  n.kind = Kind::Param;
  n.name = std::move(name);
  return make(std::move(n));
}

Expr Expr::func(std::string name, std::vector<int> args, std::vector<int> orders) {
  if (orders.empty()) orders.assign(args.size(), 0);
  if (orders.size() != args.size()) throw std::invalid_argument("function symbol: orders/args size mismatch");
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] < 0 || args[i] >= kDim) throw std::invalid_argument("function symbol: bad argument");
    if (i > 0 && args[i] <= args[i - 1]) throw std::invalid_argument("function symbol: arguments must be distinct and ordered t,x,y");
    if (orders[i] < 0) throw std::invalid_argument("function symbol: negative derivative order");
  }
  Node n;
  n.kind = Kind::Func;
  n.name = std::move(name);
  n.args = std::move(args);
  n.orders = std::move(orders);
  return make(std::move(n));
}

Expr Expr::make(Node node) { return Expr(std::make_shared<const Node>(std::move(node))); }

std::string Expr::str() const { return to_string(*this); }

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero_literal()) return b;
  if (b.is_zero_literal()) return a;
  if (a.is_number() && b.is_number()) return Expr(Rational(a.value() + b.value()));
  Node n;
  n.kind = Kind::Add;
  for (const Expr* e : {&a, &b}) {
    if (e->kind() == Kind::Add) {
      n.children.insert(n.children.end(), e->children().begin(), e->children().end());
    } else {
      n.children.push_back(*e);
    }
  }
  return Expr::make(std::move(n));
}

Expr operator-(const Expr& a) {
  if (a.is_number()) return Expr(Rational(-a.value()));
  return Expr(-1) * a;
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero_literal() || b.is_zero_literal()) return Expr();
  if (a.is_one_literal()) return b;
  if (b.is_one_literal()) return a;
  if (a.is_number() && b.is_number()) return Expr(Rational(a.value() * b.value()));
  Node n;
  n.kind = Kind::Mul;
  for (const Expr* e : {&a, &b}) {
    if (e->kind() == Kind::Mul) {
      n.children.insert(n.children.end(), e->children().begin(), e->children().end());
    } else {
      n.children.push_back(*e);
    }
  }
  return Expr::make(std::move(n));
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero_literal()) throw std::domain_error("division by literal zero");
  if (a.is_number() && b.is_number()) return Expr(Rational(a.value() / b.value()));
  return a * pow(b, -1);
}

Expr pow(const Expr& base, const Rational& exponent) {
  if (exponent == 0) return Expr(1);
  if (exponent == 1) return base;
  if (base.is_number() && exponent.get_den() == 1) {
    const Rational& v = base.value();
    if (sgn(v) == 0) {
      if (sgn(exponent) < 0) throw std::domain_error("zero raised to a negative power");
      return Expr();
    }
    mpz_class num = v.get_num(), den = v.get_den();
    const unsigned long k = mpz_class(abs(exponent.get_num())).get_ui();
    mpz_class pn, pd;
    mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), k);
    mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), k);
    Rational r(pn, pd);
    r.canonicalize();
    if (sgn(exponent) < 0) r = 1 / r;
    return Expr(r);
  }
  Node n;
  n.kind = Kind::Pow;
  n.value = exponent;
  n.children = {base};
  return Expr::make(std::move(n));
}

Expr exp(const Expr& arg) {
  if (arg.is_zero_literal()) return Expr(1);
  return unary(Kind::Exp, arg);
}
Expr sin(const Expr& arg) {
  if (arg.is_zero_literal()) return Expr();
  return unary(Kind::Sin, arg);
}
Expr cos(const Expr& arg) {
  if (arg.is_zero_literal()) return Expr(1);
  return unary(Kind::Cos, arg);
}
Expr sqrt(const Expr& arg) { return unary(Kind::Sqrt, arg); }

Expr abs(const Expr& arg, Sign sign) {
  Node n;
  n.kind = Kind::Abs;
  n.children = {arg};
  n.sign = sign;
  return Expr::make(std::move(n));
}

Expr sum(const std::vector<Expr>& terms) {
  Expr acc;
  for (const auto& t : terms) acc = acc + t;
  return acc;
}

Expr product(const std::vector<Expr>& factors) {
  Expr acc(1);
  for (const auto& f : factors) acc = acc * f;
  return acc;
}

int compare(const Expr& a, const Expr& b) {
  const Node& na = a.node();
  const Node& nb = b.node();
  if (&na == &nb) return 0;
  if (na.kind != nb.kind) return na.kind < nb.kind ? -1 : 1;
  switch (na.kind) {
    case Kind::Number: {
      int c = cmp(na.value, nb.value);
      return c < 0 ? -1 : c > 0 ? 1 : 0;
    }
    case Kind::Coord:
      return na.coord < nb.coord ? -1 : na.coord > nb.coord ? 1 : 0;
    case Kind::Param: {
      int c = na.name.compare(nb.name);
      return c < 0 ? -1 : c > 0 ? 1 : 0;
    }
    case Kind::Func: {
      int c = na.name.compare(nb.name);
      if (c != 0) return c < 0 ? -1 : 1;
      if (na.args != nb.args) return na.args < nb.args ? -1 : 1;
      if (na.orders != nb.orders) return na.orders < nb.orders ? -1 : 1;
      return 0;
    }
    case Kind::Pow: {
      int c = cmp(na.value, nb.value);
      if (c != 0) return c < 0 ? -1 : 1;
      break;
    }
    case Kind::Abs:
      if (na.sign != nb.sign) return na.sign < nb.sign ? -1 : 1;
      break;
    default:
      break;
  }
  const auto& ca = na.children;
  const auto& cb = nb.children;
  const std::size_t n = std::min(ca.size(), cb.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare(ca[i], cb[i]);
    if (c != 0) return c;
  }
  if (ca.size() != cb.size()) return ca.size() < cb.size() ? -1 : 1;
  return 0;
}

namespace {

void collect(const Expr& e, SymbolSet& out) {
  const Node& n = e.node();
  switch (n.kind) {
    case Kind::Coord:
      out.coords[n.coord] = true;
      return;
    case Kind::Param:
      out.params.insert(n.name);
      return;
    case Kind::Func: {
      auto& orders = out.funcs[FuncSignature{n.name, n.args}];
      if (orders.empty()) orders.assign(n.args.size(), 0);
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        orders[i] = std::max(orders[i], n.orders[i]);
        out.coords[n.args[i]] = true;
      }
      return;
    }
    default:
      for (const auto& c : n.children) collect(c, out);
  }
}

}  // namespace

void SymbolSet::merge(const SymbolSet& other) {
  params.insert(other.params.begin(), other.params.end());
  for (const auto& [sig, orders] : other.funcs) {
    auto [it, fresh] = funcs.emplace(sig, orders);
    if (fresh) continue;
    for (std::size_t i = 0; i < orders.size(); ++i) it->second[i] = std::max(it->second[i], orders[i]);
  }
  for (int c = 0; c < kDim; ++c) coords[c] = coords[c] || other.coords[c];
}

SymbolSet symbols_of(const Expr& e) {
  SymbolSet s;
  collect(e, s);
  return s;
}

bool depends_on(const Expr& e, int coord) { return symbols_of(e).coords[coord]; }

}  // namespace walker::sym
