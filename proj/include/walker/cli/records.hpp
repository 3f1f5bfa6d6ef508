#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace walker::cli {

/// One output line of `key=value` pairs. Values that are empty or contain
/// spaces, quotes, '=' or backslashes are double-quoted; inner quotes and
/// backslashes get a backslash escape.
class Record {
 public:
  explicit Record(const std::string& kind) { add("record", kind); }

  Record& add(const std::string& key, const std::string& value);
  Record& add(const std::string& key, double value);
  Record& add(const std::string& key, long long value);
  Record& add(const std::string& key, bool value) { return add(key, std::string(value ? "yes" : "no")); }
  Record& add(const std::string& key, const char* value) { return add(key, std::string(value)); }

  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

using Fields = std::vector<std::pair<std::string, std::string>>;

/// Inverse of Record::str(); std::nullopt on malformed input.
std::optional<Fields> parse_record(const std::string& line);

/// Looks up a key in parsed fields.
std::optional<std::string> field_value(const Fields& fields, const std::string& key);

/// Fixed-format number rendering shared by text and records ("%.10g").
std::string format_number(double v);

}  // namespace walker::cli
