#pragma once

// Flat key-value configuration with [section] headers:
//
//   [quadrature]
//   rel_tol = 1e-9
//
// Keys are addressed as "section.key". '#' starts a comment.

#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace dslab::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ConfigMap = std::map<std::string, std::string>;

/// Keys the tool understands; anything else is a ConfigError.
const std::set<std::string>& known_config_keys();

/// Parses text; ConfigError on malformed lines, duplicate or unknown keys.
ConfigMap parse_config(const std::string& text);

/// Reads and parses a file; ConfigError when it cannot be read.
ConfigMap load_config(const std::string& path);

double config_double(const ConfigMap& cfg, const std::string& key, double fallback);
long config_long(const ConfigMap& cfg, const std::string& key, long fallback);
unsigned long long config_u64(const ConfigMap& cfg, const std::string& key, unsigned long long fallback);

}  // namespace dslab::cli
