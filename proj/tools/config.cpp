#include "config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace dslab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& v) {
  if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') || (v.front() == '\'' && v.back() == '\'')))
    return v.substr(1, v.size() - 2);
  return v;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw ConfigError("config: bad numeric value for " + key + ": '" + text + "'");
  return value;
}

}  // namespace

const std::set<std::string>& known_config_keys() {
  static const std::set<std::string> keys = {
      "run.threads",         "run.seed",          "run.report_limit",         "run.format",
      "quadrature.rel_tol",  "quadrature.abs_tol", "quadrature.max_subdivisions", "quadrature.laplace_truncation",
      "gamma.mu_max",        "gamma.nu_max",       "gamma.r_max",              "genfun.order",
      "simulate.samples",    "simulate.horizon",   "simulate.alpha"};
  return keys;
}

ConfigMap parse_config(const std::string& text) {
  ConfigMap out;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "config line " + std::to_string(lineno) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError(where + "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = unquote(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(where + "empty key");
    const std::string full = section.empty() ? key : section + "." + key;
    if (!known_config_keys().count(full)) throw ConfigError(where + "unknown key '" + full + "'");
    if (!out.emplace(full, value).second) throw ConfigError(where + "duplicate key '" + full + "'");
  }
  return out;
}

ConfigMap load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

double config_double(const ConfigMap& cfg, const std::string& key, double fallback) {
  const auto it = cfg.find(key);
  if (it == cfg.end()) return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value for " + key + ": '" + it->second + "'");
  }
}

long config_long(const ConfigMap& cfg, const std::string& key, long fallback) {
  const auto it = cfg.find(key);
  return it == cfg.end() ? fallback : parse_number<long>(key, it->second);
}

unsigned long long config_u64(const ConfigMap& cfg, const std::string& key, unsigned long long fallback) {
  const auto it = cfg.find(key);
  return it == cfg.end() ? fallback : parse_number<unsigned long long>(key, it->second);
}

}  // namespace dslab::cli
