#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>

#include "hspec/errors.hpp"

namespace hspec {

// Flat key = value configuration with [section] headers; keys are stored as
// "section.key". No nesting, no quoting: diff-friendly and echoable.
struct ExperimentConfig {
  std::string name;
  std::uint64_t seed = 1;
  std::map<std::string, std::string> kv;

  bool has(const std::string& key) const { return kv.count(key) > 0; }

  std::string get_str(const std::string& key, const std::string& dflt) const {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : it->second;
  }
  double get_num(const std::string& key, double dflt) const {
    auto it = kv.find(key);
    if (it == kv.end()) return dflt;
    try {
      if (it->second == "inf") return INFINITY;
      std::size_t pos = 0;
      const double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw config_error("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw config_error("config: key '" + key + "' is not numeric: " + it->second);
    }
  }
  long long get_int(const std::string& key, long long dflt) const {
    auto it = kv.find(key);
    if (it == kv.end()) return dflt;
    try {
      std::size_t pos = 0;
      const long long v = std::stoll(it->second, &pos);
      if (pos != it->second.size()) throw config_error("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw config_error("config: key '" + key + "' is not an integer: " + it->second);
    }
  }
};

namespace detail {
inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  std::size_t b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}
}  // namespace detail

inline ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw config_error("config line " + std::to_string(lineno) + ": malformed section header");
      section = detail::trim(t.substr(1, t.size() - 2));
      if (section.empty())
        throw config_error("config line " + std::to_string(lineno) + ": empty section name");
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(t.substr(0, eq));
    const std::string val = detail::trim(t.substr(eq + 1));
    if (key.empty())
      throw config_error("config line " + std::to_string(lineno) + ": empty key");
    if (section.empty())
      throw config_error("config line " + std::to_string(lineno) + ": key outside a section");
    cfg.kv[section + "." + key] = val;
  }
  cfg.name = cfg.get_str("experiment.name", "");
  cfg.seed = static_cast<std::uint64_t>(cfg.get_int("experiment.seed", 1));
  return cfg;
}

// Canonical serialization; parse(echo(c)) reproduces c exactly.
inline std::string echo_config(const ExperimentConfig& cfg) {
  std::map<std::string, std::map<std::string, std::string>> sections;
  for (const auto& [k, v] : cfg.kv) {
    const std::size_t dot = k.find('.');
    sections[k.substr(0, dot)][k.substr(dot + 1)] = v;
  }
  std::ostringstream out;
  for (const auto& [sec, keys] : sections) {
    out << "[" << sec << "]\n";
    for (const auto& [k, v] : keys) out << k << " = " << v << "\n";
  }
  return out.str();
}

}  // namespace hspec
