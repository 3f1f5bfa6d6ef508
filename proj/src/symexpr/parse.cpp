#include "walker/symexpr/parse.hpp"

#include <algorithm>
#include <cctype>

namespace walker::sym {

ParseError::ParseError(Kind kind, std::size_t offset, const std::string& message)
    : std::runtime_error(message + " at byte " + std::to_string(offset)), kind_(kind), offset_(offset) {}

namespace {

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

int coord_index(std::string_view name) {
  if (name == "t") return kT;
  if (name == "x") return kX;
  if (name == "y") return kY;
  return -1;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(ParseError::Kind::Syntax, pos_, msg); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
    throw ParseError(ParseError::Kind::Syntax, at, msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr expr() {
    Expr acc = term();
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Expr term() {
    Expr acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        skip_ws();
        std::size_t at = pos_;
        Expr d = unary();
        if (d.is_zero_literal()) fail_at(at, "division by zero");
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) {
      skip_ws();
      std::size_t at = pos_;
      Expr ex = unary();
      if (!ex.is_number()) fail_at(at, "exponent must be a rational constant");
      if (base.is_zero_literal() && sgn(ex.value()) < 0) fail_at(at, "zero raised to a negative power");
      return pow(base, ex.value());
    }
    return base;
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const unsigned char c = static_cast<unsigned char>(s_[pos_]);
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(c) || c == '.') return number();
    if (ident_start(c)) return identifier();
    fail("unexpected '" + std::string(1, static_cast<char>(c)) + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    std::string digits;
    bool seen_dot = false;
    long frac_digits = 0;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits += c;
        if (seen_dot) ++frac_digits;
      } else if (c == '.' && !seen_dot) {
        seen_dot = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (digits.empty()) fail_at(start, "malformed number");
    long exponent = 0;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      bool neg = false;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) neg = s_[pos_++] == '-';
      std::string ed;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ed += s_[pos_++];
      if (ed.empty() || ed.size() > 6) {
        pos_ = save;  // not an exponent; let the caller report the identifier
      } else {
        exponent = std::stol(ed) * (neg ? -1 : 1);
      }
    }
    mpz_class num(digits);
    exponent -= frac_digits;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational r = exponent < 0 ? Rational(num, scale) : Rational(num * scale, 1);
    r.canonicalize();
    return Expr(r);
  }

  std::string ident_text() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(static_cast<unsigned char>(s_[pos_]))) {
      if (s_[pos_] == '_' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '{') break;
      ++pos_;
    }
    return std::string(s_.substr(start, pos_ - start));
  }

  Expr identifier() {
    const std::size_t start = pos_;
    std::string name = ident_text();
    if (name.empty()) fail("expected identifier");

    int primes = 0;
    while (pos_ < s_.size() && s_[pos_] == '\'') {
      ++primes;
      ++pos_;
    }
    std::string subscript;
    bool has_subscript = false;
    if (primes == 0 && pos_ + 1 < s_.size() && s_[pos_] == '_' && s_[pos_ + 1] == '{') {
      pos_ += 2;
      has_subscript = true;
      while (pos_ < s_.size() && s_[pos_] != '}') {
        if (!std::isspace(static_cast<unsigned char>(s_[pos_]))) subscript += s_[pos_];
        ++pos_;
      }
      if (pos_ >= s_.size()) fail("unterminated derivative subscript");
      ++pos_;
    }

    skip_ws();
    const bool applied = pos_ < s_.size() && s_[pos_] == '(';
    static const char* builtins[] = {"exp", "sin", "cos", "sqrt", "abs"};
    const bool builtin = std::find(std::begin(builtins), std::end(builtins), name) != std::end(builtins);

    if (builtin) {
      if (primes || has_subscript) fail_at(start, "derivative marks on builtin '" + name + "'");
      if (!applied) throw ParseError(ParseError::Kind::Arity, start, "builtin '" + name + "' needs one argument");
      ++pos_;
      std::vector<Expr> args;
      if (!accept(')')) {
        args.push_back(expr());
        while (accept(',')) args.push_back(expr());
        expect(')');
      }
      if (args.size() != 1) {
        throw ParseError(ParseError::Kind::Arity, start,
                         "builtin '" + name + "' takes 1 argument, got " + std::to_string(args.size()));
      }
      if (name == "exp") return exp(args[0]);
      if (name == "sin") return sin(args[0]);
      if (name == "cos") return cos(args[0]);
      if (name == "sqrt") return sqrt(args[0]);
      return abs(args[0]);
    }

    if (!applied) {
      if (primes || has_subscript) fail_at(start, "derivative of '" + name + "' needs an argument list");
      int c = coord_index(name);
      if (c >= 0) return Expr::coord(c);
      return Expr::param(name);
    }

    if (coord_index(name) >= 0) fail_at(start, "coordinate '" + name + "' cannot be applied");
    ++pos_;  // '('
    std::vector<int> args;
    skip_ws();
    if (!accept(')')) {
      for (;;) {
        skip_ws();
        std::size_t at = pos_;
        std::string arg = ident_text();
        int c = coord_index(arg);
        if (c < 0) fail_at(at, "function symbol arguments must be coordinates t, x, y");
        if (std::find(args.begin(), args.end(), c) != args.end()) fail_at(at, "repeated argument '" + arg + "'");
        args.push_back(c);
        if (accept(')')) break;
        expect(',');
      }
    }
    if (args.empty()) fail_at(start, "function symbol '" + name + "' needs at least one argument");
    std::sort(args.begin(), args.end());

    std::vector<int> orders(args.size(), 0);
    if (primes) {
      if (args.size() != 1) {
        throw ParseError(ParseError::Kind::Arity, start,
                         "primes are only allowed on one-argument symbols; use " + name + "_{...}");
      }
      orders[0] = primes;
    }
    for (char ch : subscript) {
      int c = coord_index(std::string_view(&ch, 1));
      auto it = std::find(args.begin(), args.end(), c);
      if (c < 0 || it == args.end()) {
        fail_at(start, "subscript '" + std::string(1, ch) + "' is not an argument of '" + name + "'");
      }
      ++orders[static_cast<std::size_t>(it - args.begin())];
    }
    return Expr::func(name, std::move(args), std::move(orders));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

}  // namespace walker::sym
