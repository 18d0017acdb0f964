#include "socnet/config.hpp"

#include <charconv>
#include <cmath>

#include "socnet/io.hpp"

namespace socnet {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double to_double(std::string_view text, std::string_view what) {
  const std::string s = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(std::string(what) + ": not a number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

RunConfig::RunConfig(std::set<std::string> allowed_keys) : allowed_(std::move(allowed_keys)) {}

void RunConfig::load_file(const std::filesystem::path& path) {
  std::string text;
  try {
    text = io::read_text(path);
  } catch (const io::IoError& e) {
    throw ConfigError(e.what());
  }
  parse_text(text, path.string());
}

void RunConfig::parse_text(std::string_view text, std::string_view source) {
  const auto lines = io::split(text, '\n');
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(std::string(source) + ":" + std::to_string(i + 1) + ": expected key=value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    try {
      set(key, trim(std::string_view(line).substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(source) + ":" + std::to_string(i + 1) + ": " + e.what());
    }
  }
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (!allowed_.contains(key)) throw ConfigError("unknown configuration key '" + key + "'");
  values_[key] = value;
}

void RunConfig::set_default(const std::string& key, const std::string& value) {
  if (!has(key)) set(key, value);
}

bool RunConfig::has(const std::string& key) const { return values_.contains(key); }

std::string RunConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing required setting '" + key + "'");
  return it->second;
}

double RunConfig::get_double(const std::string& key) const { return to_double(get(key), key); }

std::uint64_t RunConfig::get_uint(const std::string& key) const {
  const std::string s = get(key);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(key + ": not a non-negative integer '" + s + "'");
  }
  return value;
}

bool RunConfig::get_bool(const std::string& key) const {
  const std::string s = get(key);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ConfigError(key + ": expected true or false, got '" + s + "'");
}

std::string RunConfig::to_text() const {
  std::string out;
  for (const auto& [key, value] : values_) out += key + "=" + value + "\n";
  return out;
}

bool is_range(std::string_view text) { return text.find(':') != std::string_view::npos; }

std::vector<double> parse_range(std::string_view text) {
  if (!is_range(text)) return {to_double(text, "value")};
  const auto parts = io::split(text, ':');
  if (parts.size() != 3) throw ConfigError("range must be start:stop:step, got '" + std::string(text) + "'");
  const double start = to_double(parts[0], "range start");
  const double stop = to_double(parts[1], "range stop");
  const double step = to_double(parts[2], "range step");
  if (!(step > 0.0)) throw ConfigError("range step must be positive");
  if (stop < start) throw ConfigError("range stop precedes start");
  std::vector<double> values;
  for (std::size_t i = 0;; ++i) {
    const double v = start + static_cast<double>(i) * step;
    if (v > stop + 1e-12) break;
    values.push_back(std::round(v * 1e12) / 1e12);
  }
  return values;
}

}  // namespace socnet
