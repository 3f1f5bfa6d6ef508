#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "walker/geometry/manifold.hpp"
#include "walker/lie/lie.hpp"

namespace walker::cli {

/// Input error with a location; what() reads "source:line:col: message".
class ManifestError : public std::runtime_error {
 public:
  ManifestError(const std::string& source, int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct NamedField {
  std::string name;
  lie::VectorField field;
  int line = 0;
};

struct OracleSettings {
  std::optional<std::uint64_t> seed;
  std::optional<int> points;
  std::optional<double> box;
  std::optional<double> fxx_min;
  std::optional<double> step;
  /// Fixed realizations for function symbols (e.g. a solution of a rule).
  std::map<std::string, sym::Expr> realize;
};

struct Manifest {
  std::string source;
  std::string f_text;
  sym::Expr f;
  int f_line = 0;
  std::map<std::string, sym::Rational> params;
  std::set<std::string> positive;
  std::vector<NamedField> fields;
  sym::RuleSet rules;
  OracleSettings oracle;

  geo::ManifoldOptions manifold_options() const;
  const NamedField* field(const std::string& name) const;
};

/// Parses the whole manifest; every expression is parsed here so that no
/// computation starts on a partially valid input.
Manifest parse_manifest(std::istream& in, const std::string& source = "manifest");
Manifest load_manifest(const std::string& path);

}  // namespace walker::cli
