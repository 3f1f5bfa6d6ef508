#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace walker::sym {

using Rational = mpq_class;

/// Coordinate indices. The frame order (t, x, y) = (0, 1, 2) is used everywhere.
inline constexpr int kT = 0;
inline constexpr int kX = 1;
inline constexpr int kY = 2;
inline constexpr int kDim = 3;

const char* coord_name(int coord);

enum class Kind : unsigned char {
  Number,
  Coord,
  Param,
  Func,
  Add,
  Mul,
  Pow,
  Exp,
  Sin,
  Cos,
  Sqrt,
  Abs,
};

/// Sign assumption carried by abs nodes.
enum class Sign : unsigned char { Unknown, Positive };

class Expr;

struct Node {
  Kind kind = Kind::Number;
  Rational value;           // Number value or Pow exponent
  int coord = -1;           // Coord
  std::string name;         // Param / Func
  std::vector<int> args;    // Func: coordinate indices, strictly increasing
  std::vector<int> orders;  // Func: derivative order per argument
  std::vector<Expr> children;
  Sign sign = Sign::Unknown;  // Abs
};

/// Immutable expression handle. Copies share the node.
class Expr {
 public:
  Expr();
  Expr(int value);  // NOLINT(google-explicit-constructor)
  explicit Expr(const Rational& value);

  static Expr number(const Rational& value);
  static Expr coord(int index);
  static Expr param(std::string name);
  static Expr func(std::string name, std::vector<int> args, std::vector<int> orders = {});
  static Expr make(Node node);

  Kind kind() const { return node_->kind; }
  const Node& node() const { return *node_; }
  const std::vector<Expr>& children() const { return node_->children; }
  const Rational& value() const { return node_->value; }
  const std::string& name() const { return node_->name; }

  bool is_number() const { return kind() == Kind::Number; }
  bool is_zero_literal() const { return is_number() && sgn(value()) == 0; }
  bool is_one_literal() const { return is_number() && value() == 1; }

  std::string str() const;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Raw tree builders. They fold literal arithmetic and flatten nested sums and
// products but perform no algebraic normalization.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr pow(const Expr& base, const Rational& exponent);
Expr exp(const Expr& arg);
Expr sin(const Expr& arg);
Expr cos(const Expr& arg);
Expr sqrt(const Expr& arg);
Expr abs(const Expr& arg, Sign sign = Sign::Unknown);

Expr sum(const std::vector<Expr>& terms);
Expr product(const std::vector<Expr>& factors);

inline Expr t() { return Expr::coord(kT); }
inline Expr x() { return Expr::coord(kX); }
inline Expr y() { return Expr::coord(kY); }

/// Total structural order on trees; 0 means structurally identical.
int compare(const Expr& a, const Expr& b);
inline bool same(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

/// Identity of a function symbol occurrence without its derivative orders.
struct FuncSignature {
  std::string name;
  std::vector<int> args;
  auto operator<=>(const FuncSignature&) const = default;
};

/// Free symbols of a tree.
struct SymbolSet {
  std::set<std::string> params;
  /// Highest derivative order seen per argument slot.
  std::map<FuncSignature, std::vector<int>> funcs;
  std::array<bool, kDim> coords{};

  /// Union; derivative orders take the elementwise maximum.
  void merge(const SymbolSet& other);
};

SymbolSet symbols_of(const Expr& e);

bool depends_on(const Expr& e, int coord);

/// Rendering. The output reparses to a structurally equal normalized tree.
std::string to_string(const Expr& e);

}  // namespace walker::sym
