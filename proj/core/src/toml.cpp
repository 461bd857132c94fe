#include "ddqe/io/toml.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ddqe::io {

namespace {

[[noreturn]] void fail(int lineno, const std::string& msg) {
  throw std::runtime_error("toml: line " + std::to_string(lineno) + ": " + msg);
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// strip a trailing comment that is not inside a string literal
std::string strip_comment(const std::string& s) {
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_str = !in_str;
    if (s[i] == '#' && !in_str) return s.substr(0, i);
  }
  return s;
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'))
      return false;
  return true;
}

TomlValue parse_scalar(const std::string& tok, int lineno) {
  if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"') {
    std::string out;
    for (std::size_t i = 1; i + 1 < tok.size(); ++i) {
      if (tok[i] == '\\' && i + 2 < tok.size()) {
        ++i;
        switch (tok[i]) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail(lineno, "unsupported escape");
        }
      } else if (tok[i] == '"') {
        fail(lineno, "stray quote in string");
      } else {
        out += tok[i];
      }
    }
    return TomlValue{out};
  }
  if (tok == "true") return TomlValue{true};
  if (tok == "false") return TomlValue{false};
  // integer?
  {
    std::int64_t iv = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), iv);
    if (ec == std::errc() && p == tok.data() + tok.size()) return TomlValue{iv};
  }
  {
    double dv = 0.0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), dv);
    if (ec == std::errc() && p == tok.data() + tok.size()) {
      if (!std::isfinite(dv)) fail(lineno, "non-finite number");
      return TomlValue{dv};
    }
  }
  fail(lineno, "cannot parse value '" + tok + "'");
}

TomlValue parse_value(const std::string& tok, int lineno) {
  if (!tok.empty() && tok.front() == '[') {
    if (tok.back() != ']') fail(lineno, "unterminated array");
    TomlValue::Array arr;
    std::string inner = tok.substr(1, tok.size() - 2);
    std::string cur;
    bool in_str = false;
    for (char c : inner) {
      if (c == '"') in_str = !in_str;
      if (c == ',' && !in_str) {
        const std::string t = trim(cur);
        if (!t.empty()) arr.push_back(parse_scalar(t, lineno));
        cur.clear();
      } else {
        cur += c;
      }
    }
    const std::string t = trim(cur);
    if (!t.empty()) arr.push_back(parse_scalar(t, lineno));
    return TomlValue{arr};
  }
  return parse_scalar(tok, lineno);
}

}  // namespace

double TomlValue::as_number() const {
  if (is_int()) return static_cast<double>(as_int());
  return std::get<double>(v);
}

TomlTable parse_toml(const std::string& text) {
  TomlTable out;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!valid_key(section)) fail(lineno, "bad section name");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!valid_key(key)) fail(lineno, "bad key '" + key + "'");
    if (val.empty()) fail(lineno, "missing value");
    const std::string full = section.empty() ? key : section + "." + key;
    if (out.count(full)) fail(lineno, "duplicate key '" + full + "'");
    out.emplace(full, parse_value(val, lineno));
  }
  return out;
}

namespace {

std::string serialize_value(const TomlValue& v) {
  if (v.is_string()) {
    std::string s = "\"";
    for (char c : v.as_string()) {
      if (c == '"' || c == '\\') s += '\\';
      s += c;
    }
    return s + "\"";
  }
  if (v.is_bool()) return v.as_bool() ? "true" : "false";
  if (v.is_int()) return std::to_string(v.as_int());
  if (v.is_float()) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), std::get<double>(v.v));
    std::string s(buf, res.ptr);
    // keep floats parseable as floats
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos)
      s += ".0";
    return s;
  }
  std::string s = "[";
  const auto& arr = v.as_array();
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) s += ", ";
    s += serialize_value(arr[i]);
  }
  return s + "]";
}

}  // namespace

std::string serialize_toml(const TomlTable& table) {
  std::string out;
  for (const auto& [k, v] : table) {
    if (k.find('.') != std::string::npos) continue;  // handled below
    out += k + " = " + serialize_value(v) + "\n";
  }
  // grouped sections
  std::string current;
  for (const auto& [k, v] : table) {
    const std::size_t dot = k.find('.');
    if (dot == std::string::npos) continue;
    const std::string sec = k.substr(0, dot);
    if (sec != current) {
      out += "[" + sec + "]\n";
      current = sec;
    }
    out += k.substr(dot + 1) + " = " + serialize_value(v) + "\n";
  }
  return out;
}

}  // namespace ddqe::io
