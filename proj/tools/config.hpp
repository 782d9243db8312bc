#pragma once

// Sectioned key=value config files (TOML-style subset: [section] headers,
// scalar values, '#' comments). Unknown keys are rejected against a
// per-command schema so typos fail loudly instead of silently defaulting.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace liouville_cli {

class Config {
 public:
  static Config load(const std::string& path);

  bool has(const std::string& sec, const std::string& key) const;
  std::string str(const std::string& sec, const std::string& key,
                  const std::string& fallback) const;
  double num(const std::string& sec, const std::string& key, double fallback) const;
  int integer(const std::string& sec, const std::string& key, int fallback) const;
  bool flag(const std::string& sec, const std::string& key, bool fallback) const;
  std::vector<double> list(const std::string& sec, const std::string& key,
                           const std::vector<double>& fallback) const;

  /// Throws std::runtime_error naming the first key not covered by the schema.
  void validate(const std::map<std::string, std::set<std::string>>& schema) const;

  /// Canonical serialization (sorted sections/keys) and its FNV-1a hash.
  std::string canonical() const;
  std::uint64_t hash() const;

  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return sections_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace liouville_cli
