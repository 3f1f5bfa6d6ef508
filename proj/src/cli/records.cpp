#include "walker/cli/records.hpp"

#include <cstdio>

namespace walker::cli {

namespace {

bool needs_quotes(const std::string& v) {
  if (v.empty()) return true;
  for (char c : v) {
    if (c == ' ' || c == '\t' || c == '"' || c == '=' || c == '\\') return true;
  }
  return false;
}

}  // namespace

std::string format_number(double v) {
  if (v == 0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

Record& Record::add(const std::string& key, const std::string& value) {
  fields_.emplace_back(key, value);
  return *this;
}

Record& Record::add(const std::string& key, double value) { return add(key, format_number(value)); }

Record& Record::add(const std::string& key, long long value) { return add(key, std::to_string(value)); }

std::string Record::str() const {
  std::string out;
  for (const auto& [k, v] : fields_) {
    if (!out.empty()) out += ' ';
    out += k;
    out += '=';
    if (!needs_quotes(v)) {
      out += v;
      continue;
    }
    out += '"';
    for (char c : v) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    out += '"';
  }
  return out;
}

std::optional<Fields> parse_record(const std::string& line) {
  Fields out;
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (i < n) {
    while (i < n && line[i] == ' ') ++i;
    if (i == n) break;
    const std::size_t eq = line.find('=', i);
    if (eq == std::string::npos || eq == i) return std::nullopt;
    std::string key = line.substr(i, eq - i);
    if (key.find(' ') != std::string::npos) return std::nullopt;
    i = eq + 1;
    std::string value;
    if (i < n && line[i] == '"') {
      ++i;
      bool closed = false;
      while (i < n) {
        char c = line[i++];
        if (c == '\\') {
          if (i == n) return std::nullopt;
          value += line[i++];
        } else if (c == '"') {
          closed = true;
          break;
        } else {
          value += c;
        }
      }
      if (!closed || (i < n && line[i] != ' ')) return std::nullopt;
    } else {
      while (i < n && line[i] != ' ') value += line[i++];
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  if (out.empty() || out.front().first != "record") return std::nullopt;
  return out;
}

std::optional<std::string> field_value(const Fields& fields, const std::string& key) {
  for (const auto& [k, v] : fields) {
    if (k == key) return v;
  }
  return std::nullopt;
}

}  // namespace walker::cli
