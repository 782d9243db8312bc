#include "config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace liouville_cli {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  Config cfg;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("config: malformed section at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      cfg.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: expected key=value at line " + std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (val.size() >= 2 && val.front() == '"' && val.back() == '"')
      val = val.substr(1, val.size() - 2);
    if (key.empty())
      throw std::runtime_error("config: empty key at line " + std::to_string(lineno));
    auto& sec = cfg.sections_[section];
    if (sec.count(key))
      throw std::runtime_error("config: duplicate key '" + key + "' at line " +
                               std::to_string(lineno));
    sec[key] = val;
  }
  return cfg;
}

bool Config::has(const std::string& sec, const std::string& key) const {
  const auto s = sections_.find(sec);
  return s != sections_.end() && s->second.count(key) > 0;
}

std::string Config::str(const std::string& sec, const std::string& key,
                        const std::string& fallback) const {
  const auto s = sections_.find(sec);
  if (s == sections_.end()) return fallback;
  const auto k = s->second.find(key);
  return k == s->second.end() ? fallback : k->second;
}

double Config::num(const std::string& sec, const std::string& key, double fallback) const {
  if (!has(sec, key)) return fallback;
  const std::string v = str(sec, key, "");
  size_t pos = 0;
  const double x = std::stod(v, &pos);
  if (pos != v.size())
    throw std::runtime_error("config: key '" + key + "' is not a number: " + v);
  return x;
}

int Config::integer(const std::string& sec, const std::string& key, int fallback) const {
  if (!has(sec, key)) return fallback;
  return int(std::llround(num(sec, key, 0.0)));
}

bool Config::flag(const std::string& sec, const std::string& key, bool fallback) const {
  if (!has(sec, key)) return fallback;
  const std::string v = str(sec, key, "");
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::runtime_error("config: key '" + key + "' is not a bool: " + v);
}

std::vector<double> Config::list(const std::string& sec, const std::string& key,
                                 const std::vector<double>& fallback) const {
  if (!has(sec, key)) return fallback;
  std::vector<double> out;
  std::stringstream ss(str(sec, key, ""));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const std::string t = trim(tok);
    if (!t.empty()) out.push_back(std::stod(t));
  }
  if (out.empty())
    throw std::runtime_error("config: key '" + key + "' is an empty list");
  return out;
}

void Config::validate(const std::map<std::string, std::set<std::string>>& schema) const {
  for (const auto& [sec, kv] : sections_) {
    const auto s = schema.find(sec);
    if (s == schema.end())
      throw std::runtime_error("config: unknown section [" + sec + "]");
    for (const auto& [key, val] : kv) {
      (void)val;
      if (s->second.count(key)) continue;
      // potential polynomial terms come as c_<i>_<j>
      if (sec == "potential" && key.rfind("c_", 0) == 0) continue;
      throw std::runtime_error("config: unknown key '" + key + "' in section [" + sec + "]");
    }
  }
}

std::string Config::canonical() const {
  std::ostringstream out;
  for (const auto& [sec, kv] : sections_) {
    out << '[' << sec << "]\n";
    for (const auto& [key, val] : kv) out << key << '=' << val << '\n';
  }
  return out.str();
}

std::uint64_t Config::hash() const {
  const std::string c = canonical();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : c) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace liouville_cli
