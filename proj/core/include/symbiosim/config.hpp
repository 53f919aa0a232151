#ifndef SYMBIOSIM_CONFIG_HPP
#define SYMBIOSIM_CONFIG_HPP

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace symbiosim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat "key = value" file with '#' comments. Reads are recorded so a run can
// echo its fully resolved configuration, and unknown keys are rejected once
// the caller has declared everything it understands.
class Config {
 public:
  Config() = default;
  static Config parse_file(const std::string& path);
  static Config parse_text(const std::string& text);

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string get_string(const std::string& key, const std::string& fallback);
  std::string require_string(const std::string& key);
  double get_double(const std::string& key, double fallback);
  std::int64_t get_int(const std::string& key, std::int64_t fallback);
  std::int64_t require_int(const std::string& key);
  double require_double(const std::string& key);
  std::vector<double> get_double_list(const std::string& key, std::vector<double> fallback);
  std::vector<std::int64_t> get_int_list(const std::string& key,
                                         std::vector<std::int64_t> fallback);

  void override_value(const std::string& key, const std::string& value);

  // throws ConfigError when the file contains a key never asked about
  void reject_unknown() const;

  // "key = value" lines for every key the run resolved, sorted by key
  std::vector<std::string> resolved_lines() const;

 private:
  std::string lookup(const std::string& key, const std::string& fallback, bool required);

  std::map<std::string, std::string> values_;
  std::map<std::string, std::string> resolved_;
  std::set<std::string> touched_;
};

}  // namespace symbiosim

#endif
