#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace socnet {

/// Bad configuration or flag value. Maps to exit status 1 on the CLI.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Flat key=value configuration restricted to a fixed key set. Lines may be
/// blank or start with '#'. Later assignments override earlier ones.
class RunConfig {
 public:
  explicit RunConfig(std::set<std::string> allowed_keys);

  void load_file(const std::filesystem::path& path);
  void parse_text(std::string_view text, std::string_view source = "config");

  /// Throws ConfigError for keys outside the allowed set.
  void set(const std::string& key, const std::string& value);
  void set_default(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get(const std::string& key) const;
  double get_double(const std::string& key) const;
  std::uint64_t get_uint(const std::string& key) const;
  bool get_bool(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }

  /// Resolved configuration, one `key=value` line per key, sorted by key.
  std::string to_text() const;

 private:
  std::set<std::string> allowed_;
  std::map<std::string, std::string> values_;
};

/// `start:stop:step`, inclusive of stop within 1e-12, each value rounded to
/// 12 decimals; a plain number yields one value. Throws ConfigError.
std::vector<double> parse_range(std::string_view text);
bool is_range(std::string_view text);

}  // namespace socnet
