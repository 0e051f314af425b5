#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace recurlab::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key = value experiment description.  Lines starting with '#' and blank
// lines are ignored.  A `schema = 1` entry is mandatory, duplicate keys are
// rejected, and any key outside the caller's allowed set is an error, so a
// typo can never silently fall back to a default.
class Config {
 public:
  static Config parse_text(const std::string& text,
                           const std::vector<std::string>& allowed);
  static Config load(const std::string& path, const std::vector<std::string>& allowed);

  bool has(const std::string& key) const { return kv_.count(key) > 0; }
  const std::string& get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  long long get_int(const std::string& key) const;
  long long get_int_or(const std::string& key, long long fallback) const;

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace recurlab::cli
