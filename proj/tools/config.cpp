#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace recurlab::cli {
namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse_text(const std::string& text,
                          const std::vector<std::string>& allowed) {
  Config c;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (c.kv_.count(key))
      throw ConfigError("duplicate key: " + key);
    if (key != "schema" &&
        std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError("unknown key: " + key);
    c.kv_[key] = val;
  }
  if (!c.kv_.count("schema")) throw ConfigError("missing schema entry");
  if (c.kv_["schema"] != "1")
    throw ConfigError("unsupported schema: " + c.kv_["schema"]);
  return c;
}

Config Config::load(const std::string& path, const std::vector<std::string>& allowed) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config: " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return parse_text(os.str(), allowed);
}

const std::string& Config::get(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) throw ConfigError("missing key: " + key);
  return it->second;
}

std::string Config::get_or(const std::string& key, const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

long long Config::get_int(const std::string& key) const {
  const std::string& v = get(key);
  try {
    size_t pos = 0;
    long long r = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return r;
  } catch (const std::exception&) {
    throw ConfigError("bad integer for " + key + ": " + v);
  }
}

long long Config::get_int_or(const std::string& key, long long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

}  // namespace recurlab::cli
