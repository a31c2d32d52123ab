#pragma once
// Flat key=value configuration files.
//
//   # propagation
//   gamma = 3.0
//   shadowing_sigma_db = 4
//   areas = 5000x7500,10000x15000
//
// '#' starts a comment, blank lines are skipped, keys may not repeat.
// Readers consume the keys they understand; callers decide whether leftover
// keys are an error (the CLI treats them as one, so typos do not silently
// fall back to defaults).

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gwplan/errors.hpp"
#include "gwplan/radio.hpp"
#include "gwplan/text.hpp"

namespace gwplan {

class Config {
 public:
  static Config parse(std::istream& in) {
    Config config;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
      ++lineno;
      std::string_view line = strip_cr(raw);
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      auto eq = line.find('=');
      if (eq == std::string_view::npos)
        throw ParseError(lineno, "expected 'key = value', got '" + std::string(line) + "'");
      std::string key(trim(line.substr(0, eq)));
      std::string value(trim(line.substr(eq + 1)));
      if (key.empty()) throw ParseError(lineno, "empty key");
      if (config.entries_.count(key))
        throw ParseError(lineno, "duplicate key '" + key + "' (first seen on line " +
                                     std::to_string(config.entries_[key].line) + ")");
      config.entries_[key] = Entry{value, lineno, false};
    }
    return config;
  }

  static Config parse(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
  }

  static Config parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path, "cannot open for reading");
    return parse(in);
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  // Each getter marks the key consumed and validates the value, reporting
  // the config line on failure.
  bool get_double(const std::string& key, double& out) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return false;
    it->second.consumed = true;
    if (!parse_double(it->second.value, out))
      throw ParseError(it->second.line, "bad number for '" + key + "': '" + it->second.value + "'");
    return true;
  }

  bool get_u64(const std::string& key, std::uint64_t& out) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return false;
    it->second.consumed = true;
    if (!parse_integer(it->second.value, out))
      throw ParseError(it->second.line,
                       "bad unsigned integer for '" + key + "': '" + it->second.value + "'");
    return true;
  }

  bool get_list(const std::string& key, std::vector<std::string>& out) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return false;
    it->second.consumed = true;
    out.clear();
    for (auto item : split(it->second.value, ',')) {
      auto trimmed = trim(item);
      if (trimmed.empty())
        throw ParseError(it->second.line, "empty element in list '" + key + "'");
      out.emplace_back(trimmed);
    }
    return true;
  }

  int line_of(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }

  std::vector<std::string> unconsumed() const {
    std::vector<std::string> keys;
    for (const auto& [key, entry] : entries_)
      if (!entry.consumed) keys.push_back(key);
    return keys;
  }

 private:
  struct Entry {
    std::string value;
    int line = 0;
    bool consumed = false;
  };
  std::map<std::string, Entry> entries_;
};

// Overwrites fields of `params` for every propagation key present.
inline void apply_propagation_config(Config& config, PropagationParams& params) {
  config.get_double("tx_power_dbm", params.tx_power_dbm);
  config.get_double("pl0_dbm", params.pl0_dbm);
  config.get_double("d0", params.d0);
  config.get_double("gamma", params.gamma);
  config.get_double("shadowing_sigma_db", params.shadowing_sigma_db);
  for (int sf = SpreadingFactor::kMin; sf <= SpreadingFactor::kMax; ++sf)
    config.get_double("sensitivity_dbm_sf" + std::to_string(sf),
                      params.sensitivity_dbm[sf - SpreadingFactor::kMin]);
  params.validate();
}

inline void write_propagation_config(const PropagationParams& params, std::ostream& out) {
  out << "tx_power_dbm = " << format_double(params.tx_power_dbm) << '\n'
      << "pl0_dbm = " << format_double(params.pl0_dbm) << '\n'
      << "d0 = " << format_double(params.d0) << '\n'
      << "gamma = " << format_double(params.gamma) << '\n'
      << "shadowing_sigma_db = " << format_double(params.shadowing_sigma_db) << '\n';
  for (int sf = SpreadingFactor::kMin; sf <= SpreadingFactor::kMax; ++sf)
    out << "sensitivity_dbm_sf" << sf << " = "
        << format_double(params.sensitivity_dbm[sf - SpreadingFactor::kMin]) << '\n';
}

}  // namespace gwplan
