#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "walker/symexpr/expr.hpp"

namespace walker::sym {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Arity };

  ParseError(Kind kind, std::size_t offset, const std::string& message);

  Kind kind() const { return kind_; }
  /// Byte offset into the input where the problem was detected.
  std::size_t offset() const { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

/// Parses the expression grammar:
///   numbers (123, 1.5, 2e-3), identifiers, + - * / ^, parentheses,
///   builtins exp sin cos sqrt abs (one argument each),
///   function symbols name(args) over the coordinates t, x, y,
///   derivatives by postfix primes (alpha'(y), f1''(y)) for one-argument
///   symbols or by a coordinate subscript (f_{xxy}(x,y)) in general.
/// Identifiers followed by an argument list become function symbols;
/// other identifiers (besides t, x, y) become parameters.
Expr parse(std::string_view text);

}  // namespace walker::sym
