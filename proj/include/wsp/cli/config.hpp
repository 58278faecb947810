#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace wsp::cli {

/// Flat run configuration. Sources in increasing priority: defaults, a
/// key=value file, command-line flags; WSP_WORKERS overrides the worker count.
struct RunConfig {
  int dim = 2;
  int N = 128;
  double L = 8.0;
  double r0 = 1.0;
  double r1 = 2.0;
  std::string mode = "phi";
  std::uint64_t seed = 7;
  int workers = 1;
  bool closure = false;
  /// Limit overrides for named checks, keys "tol.<check>".
  std::map<std::string, double> tolerances;

  /// Sets one key; unknown keys and malformed values raise ParameterError.
  void set(const std::string& key, const std::string& value);
  /// Module preconditions that can be checked without data.
  void validate() const;
  double tolerance(const std::string& check, double fallback) const;
};

/// Reads "key = value" lines; '#' starts a comment.
void load_config_file(const std::string& path, RunConfig& cfg);

}  // namespace wsp::cli
