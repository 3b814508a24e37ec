#pragma once

// Flat key=value configuration files. '#' starts a comment; blank lines are
// ignored; lists are comma separated. Every getter records the value it
// resolved (default or explicit) so a run can echo its full configuration.

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gsp/error.hpp"

namespace gsp {

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline double parse_double(const std::string& key, const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw Error(ErrorCode::ConfigError, key + ": not a number: '" + s + "'");
  return v;
}

inline long long parse_integer(const std::string& key, const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw Error(ErrorCode::ConfigError, key + ": not an integer: '" + s + "'");
  return v;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

}  // namespace detail

class Config {
 public:
  Config() = default;

  static Config parse(std::istream& in) {
    Config cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const std::string body = detail::trim(line);
      if (body.empty()) continue;
      const auto eq = body.find('=');
      if (eq == std::string::npos)
        throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": expected key=value");
      const std::string key = detail::trim(std::string_view(body).substr(0, eq));
      if (key.empty()) throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": empty key");
      cfg.set(key, detail::trim(std::string_view(body).substr(eq + 1)));
    }
    return cfg;
  }

  static Config load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigError, "cannot open config " + path);
    return parse(in);
  }

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::map<std::string, std::string>& entries() const noexcept { return values_; }
  /// Values as actually used, defaults included.
  const std::map<std::string, std::string>& resolved() const noexcept { return resolved_; }

  std::string get_string(const std::string& key, const std::string& def) const {
    const auto it = values_.find(key);
    return record(key, it == values_.end() ? def : it->second);
  }

  double get_double(const std::string& key, double def) const {
    const auto it = values_.find(key);
    const double v = it == values_.end() ? def : detail::parse_double(key, it->second);
    record(key, detail::join(std::vector<double>{v}));
    return v;
  }

  long long get_int(const std::string& key, long long def) const {
    const auto it = values_.find(key);
    const long long v = it == values_.end() ? def : detail::parse_integer(key, it->second);
    record(key, std::to_string(v));
    return v;
  }

  std::uint64_t get_seed(const std::string& key, std::uint64_t def) const {
    const auto it = values_.find(key);
    std::uint64_t v = def;
    if (it != values_.end()) {
      std::size_t used = 0;
      try {
        v = std::stoull(it->second, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != it->second.size() || it->second.front() == '-')
        throw Error(ErrorCode::ConfigError, key + ": not a seed: '" + it->second + "'");
    }
    record(key, std::to_string(v));
    return v;
  }

  std::vector<double> get_doubles(const std::string& key, const std::vector<double>& def) const {
    const auto it = values_.find(key);
    std::vector<double> v = def;
    if (it != values_.end()) {
      v.clear();
      for (const auto& tok : detail::split(it->second, ',')) v.push_back(detail::parse_double(key, tok));
    }
    record(key, detail::join(v));
    return v;
  }

  std::vector<int> get_ints(const std::string& key, const std::vector<int>& def) const {
    const auto it = values_.find(key);
    std::vector<int> v = def;
    if (it != values_.end()) {
      v.clear();
      for (const auto& tok : detail::split(it->second, ',')) v.push_back(static_cast<int>(detail::parse_integer(key, tok)));
    }
    record(key, detail::join(v));
    return v;
  }

  std::vector<std::string> get_strings(const std::string& key, const std::vector<std::string>& def) const {
    const auto it = values_.find(key);
    std::vector<std::string> v = it == values_.end() ? def : detail::split(it->second, ',');
    record(key, detail::join(v));
    return v;
  }

  /// ConfigError for any explicit key not in `allowed`.
  void require_known(const std::set<std::string>& allowed) const {
    for (const auto& [k, v] : values_)
      if (!allowed.count(k)) throw Error(ErrorCode::ConfigError, "unknown config key '" + k + "'");
  }

 private:
  const std::string& record(const std::string& key, const std::string& value) const {
    return resolved_[key] = value;
  }

  std::map<std::string, std::string> values_;
  mutable std::map<std::string, std::string> resolved_;
};

}  // namespace gsp
