#include "walker/cli/manifest.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "walker/symexpr/calculus.hpp"
#include "walker/symexpr/parse.hpp"

namespace walker::cli {

ManifestError::ManifestError(const std::string& source, int line, int column, const std::string& message)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : "") +
                         (column > 0 ? ":" + std::to_string(column) : "") + ": " + message),
      line_(line),
      column_(column) {}

geo::ManifoldOptions Manifest::manifold_options() const {
  geo::ManifoldOptions o;
  o.params = params;
  o.positive = positive;
  o.rules = rules;
  return o;
}

const NamedField* Manifest::field(const std::string& name) const {
  for (const auto& f : fields) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

namespace {

enum class Section { None, Manifold, Fields, Rules, Oracle };

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

struct Parser {
  const std::string& source;
  Manifest m;
  int line = 0;
  // Column (1-based) where the current value starts in the raw line.
  int value_col = 0;

  [[noreturn]] void fail(const std::string& msg, int col = 0) const { throw ManifestError(source, line, col, msg); }

  sym::Expr expr(const std::string& text, int col) const {
    try {
      return sym::parse(text);
    } catch (const sym::ParseError& e) {
      fail(e.what(), col + static_cast<int>(e.offset()));
    }
  }

  sym::Rational number(const std::string& text, int col) const {
    const sym::Expr e = sym::normalize(expr(text, col));
    if (!e.is_number()) fail("expected a number, got '" + text + "'", col);
    return e.value();
  }

  double real(const std::string& text, int col) const { return number(text, col).get_d(); }

  long integer(const std::string& text, int col) const {
    const sym::Rational q = number(text, col);
    if (q.get_den() != 1 || !q.get_num().fits_slong_p()) fail("expected an integer, got '" + text + "'", col);
    return q.get_num().get_si();
  }

  // Splits "key = value"; the key may hold two words ("param b").
  std::pair<std::string, std::string> key_value(const std::string& raw) {
    const auto eq = raw.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    const auto vstart = raw.find_first_not_of(" \t", eq + 1);
    value_col = static_cast<int>(vstart == std::string::npos ? raw.size() : vstart) + 1;
    return {trim(raw.substr(0, eq)), trim(raw.substr(eq + 1))};
  }

  void manifold(const std::string& raw) {
    auto [key, value] = key_value(raw);
    if (key == "f") {
      if (!m.f_text.empty()) fail("duplicate key 'f'");
      if (value.empty()) fail("empty defining function", value_col);
      m.f_text = value;
      m.f = expr(value, value_col);
      m.f_line = line;
    } else if (key.rfind("param", 0) == 0 && key.size() > 5 && std::isspace(static_cast<unsigned char>(key[5]))) {
      const std::string name = trim(key.substr(5));
      if (!identifier(name)) fail("invalid parameter name '" + name + "'");
      if (m.params.count(name)) fail("duplicate parameter '" + name + "'");
      m.params[name] = number(value, value_col);
    } else if (key == "positive") {
      std::string list = value;
      for (char& c : list) c = c == ',' ? ' ' : c;
      std::istringstream words(list);
      for (std::string w; words >> w;) {
        if (!identifier(w)) fail("invalid symbol name '" + w + "'", value_col);
        m.positive.insert(w);
      }
    } else {
      fail("unknown key '" + key + "' in [manifold]");
    }
  }

  void fields(const std::string& raw) {
    auto [name, value] = key_value(raw);
    if (!identifier(name)) fail("invalid field name '" + name + "'");
    if (m.field(name)) fail("duplicate field '" + name + "'");
    std::array<std::string, 3> parts;
    std::array<int, 3> cols{};
    std::size_t start = 0;
    const std::size_t base = static_cast<std::size_t>(value_col - 1);
    const std::string tail = raw.substr(base);
    for (int i = 0; i < 3; ++i) {
      const auto bar = tail.find('|', start);
      if ((i < 2) == (bar == std::string::npos)) fail("a field needs three components 'X1 | X2 | X3'", value_col);
      const std::string piece = tail.substr(start, i < 2 ? bar - start : std::string::npos);
      parts[i] = trim(piece);
      cols[i] = static_cast<int>(base + start + piece.find_first_not_of(" \t")) + 1;
      if (parts[i].empty()) fail("empty field component", static_cast<int>(base + start) + 1);
      start = bar + 1;
    }
    lie::VectorField x;
    for (int i = 0; i < 3; ++i) x[i] = expr(parts[i], cols[i]);
    m.fields.push_back({name, x, line});
  }

  void rules(const std::string& raw) {
    const auto arrow = raw.find("->");
    if (arrow == std::string::npos) fail("expected 'lhs -> rhs'");
    const sym::Expr lhs = expr(trim(raw.substr(0, arrow)), 1);
    const auto rstart = raw.find_first_not_of(" \t", arrow + 2);
    const int rcol = static_cast<int>(rstart == std::string::npos ? raw.size() : rstart) + 1;
    const sym::Expr rhs = expr(trim(raw.substr(arrow + 2)), rcol);
    try {
      m.rules.push_back(sym::RewriteRule::make(lhs, rhs));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  void oracle(const std::string& raw) {
    auto [key, value] = key_value(raw);
    auto& o = m.oracle;
    if (key == "seed") {
      const long v = integer(value, value_col);
      if (v < 0) fail("seed must be nonnegative", value_col);
      o.seed = static_cast<std::uint64_t>(v);
    } else if (key == "points") {
      const long v = integer(value, value_col);
      if (v <= 0 || v > 100000) fail("points must be in 1..100000", value_col);
      o.points = static_cast<int>(v);
    } else if (key == "box") {
      o.box = real(value, value_col);
      if (*o.box <= 0) fail("box must be positive", value_col);
    } else if (key == "fxx_min") {
      o.fxx_min = real(value, value_col);
      if (*o.fxx_min < 0) fail("fxx_min must be nonnegative", value_col);
    } else if (key == "step") {
      o.step = real(value, value_col);
      if (*o.step <= 0 || *o.step > 0.1) fail("step must be in (0, 0.1]", value_col);
    } else if (key.rfind("realize", 0) == 0 && key.size() > 7 && std::isspace(static_cast<unsigned char>(key[7]))) {
      const std::string name = trim(key.substr(7));
      if (!identifier(name)) fail("invalid symbol name '" + name + "'");
      o.realize[name] = expr(value, value_col);
    } else {
      fail("unknown key '" + key + "' in [oracle]");
    }
  }
};

}  // namespace

Manifest parse_manifest(std::istream& in, const std::string& source) {
  Parser p{source, {}, 0, 0};
  p.m.source = source;
  Section section = Section::None;
  for (std::string raw; std::getline(in, raw);) {
    ++p.line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string text = trim(raw);
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') p.fail("unterminated section header");
      const std::string name = trim(text.substr(1, text.size() - 2));
      if (name == "manifold") {
        section = Section::Manifold;
      } else if (name == "fields") {
        section = Section::Fields;
      } else if (name == "rules") {
        section = Section::Rules;
      } else if (name == "oracle") {
        section = Section::Oracle;
      } else {
        p.fail("unknown section '[" + name + "]'");
      }
      continue;
    }
    switch (section) {
      case Section::None:
        p.fail("entry outside of a section");
      case Section::Manifold:
        p.manifold(raw);
        break;
      case Section::Fields:
        p.fields(raw);
        break;
      case Section::Rules:
        p.rules(raw);
        break;
      case Section::Oracle:
        p.oracle(raw);
        break;
    }
  }
  if (p.m.f_text.empty()) throw ManifestError(source, p.line, 0, "missing 'f' in [manifold]");
  return p.m;
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ManifestError(path, 0, 0, "cannot open manifest");
  return parse_manifest(in, path);
}

}  // namespace walker::cli
