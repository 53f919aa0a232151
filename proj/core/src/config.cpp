#include "symbiosim/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace symbiosim {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

Config Config::parse_text(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    if (cfg.values_.count(key))
      throw ConfigError("config: duplicate key '" + key + "'");
    cfg.values_[key] = value;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

std::string Config::lookup(const std::string& key, const std::string& fallback, bool required) {
  touched_.insert(key);
  auto it = values_.find(key);
  if (it == values_.end()) {
    if (required) throw ConfigError("config: missing required key '" + key + "'");
    resolved_[key] = fallback;
    return fallback;
  }
  resolved_[key] = it->second;
  return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) {
  return lookup(key, fallback, false);
}

std::string Config::require_string(const std::string& key) { return lookup(key, "", true); }

double Config::get_double(const std::string& key, double fallback) {
  const std::string raw = lookup(key, std::to_string(fallback), false);
  try {
    return std::stod(raw);
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' is not a number: " + raw);
  }
}

double Config::require_double(const std::string& key) {
  const std::string raw = lookup(key, "", true);
  try {
    return std::stod(raw);
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' is not a number: " + raw);
  }
}

std::int64_t Config::get_int(const std::string& key, std::int64_t fallback) {
  const std::string raw = lookup(key, std::to_string(fallback), false);
  try {
    return std::stoll(raw);
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' is not an integer: " + raw);
  }
}

std::int64_t Config::require_int(const std::string& key) {
  const std::string raw = lookup(key, "", true);
  try {
    return std::stoll(raw);
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' is not an integer: " + raw);
  }
}

std::vector<double> Config::get_double_list(const std::string& key, std::vector<double> fallback) {
  if (!values_.count(key)) {
    std::ostringstream os;
    for (std::size_t i = 0; i < fallback.size(); ++i) os << (i ? "," : "") << fallback[i];
    lookup(key, os.str(), false);
    return fallback;
  }
  const std::string raw = lookup(key, "", false);
  std::vector<double> out;
  std::istringstream in(raw);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stod(trim(item)));
    } catch (const std::exception&) {
      throw ConfigError("config: key '" + key + "' has a non-numeric item: " + item);
    }
  }
  if (out.empty()) throw ConfigError("config: key '" + key + "' has an empty list");
  return out;
}

std::vector<std::int64_t> Config::get_int_list(const std::string& key,
                                               std::vector<std::int64_t> fallback) {
  if (!values_.count(key)) {
    std::ostringstream os;
    for (std::size_t i = 0; i < fallback.size(); ++i) os << (i ? "," : "") << fallback[i];
    lookup(key, os.str(), false);
    return fallback;
  }
  const std::string raw = lookup(key, "", false);
  std::vector<std::int64_t> out;
  std::istringstream in(raw);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stoll(trim(item)));
    } catch (const std::exception&) {
      throw ConfigError("config: key '" + key + "' has a non-integer item: " + item);
    }
  }
  if (out.empty()) throw ConfigError("config: key '" + key + "' has an empty list");
  return out;
}

void Config::override_value(const std::string& key, const std::string& value) {
  values_[key] = value;
}

void Config::reject_unknown() const {
  for (const auto& [key, value] : values_) {
    if (!touched_.count(key)) throw ConfigError("config: unknown key '" + key + "'");
  }
}

std::vector<std::string> Config::resolved_lines() const {
  std::vector<std::string> lines;
  lines.reserve(resolved_.size());
  for (const auto& [key, value] : resolved_) lines.push_back(key + " = " + value);
  return lines;
}

}  // namespace symbiosim
