#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace ddqe::io {

/// Minimal TOML subset sufficient for run configurations: top-level and
/// [table] sections, key = value with strings, integers, floats, booleans and
/// flat arrays thereof; '#' comments. Keys inside a [section] are flattened
/// to "section.key". Duplicate keys and malformed lines are errors.
struct TomlValue {
  using Array = std::vector<TomlValue>;
  std::variant<std::string, std::int64_t, double, bool, Array> v;

  bool is_string() const { return std::holds_alternative<std::string>(v); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(v); }
  bool is_float() const { return std::holds_alternative<double>(v); }
  bool is_bool() const { return std::holds_alternative<bool>(v); }
  bool is_array() const { return std::holds_alternative<Array>(v); }

  const std::string& as_string() const { return std::get<std::string>(v); }
  std::int64_t as_int() const { return std::get<std::int64_t>(v); }
  double as_number() const;  // int or float
  bool as_bool() const { return std::get<bool>(v); }
  const Array& as_array() const { return std::get<Array>(v); }
};

using TomlTable = std::map<std::string, TomlValue>;

/// Throws std::runtime_error with a line-numbered message on malformed input.
TomlTable parse_toml(const std::string& text);

std::string serialize_toml(const TomlTable& table);

}  // namespace ddqe::io
