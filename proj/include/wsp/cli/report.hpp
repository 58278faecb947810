#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "wsp/cli/config.hpp"
#include "wsp/pressure.hpp"

namespace wsp::cli {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

enum class Relation { AtMost, AtLeast, Within };

/// One named invariant verdict.
struct Check {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  /// Lower end for Within.
  double lower = 0.0;
  Relation relation = Relation::AtMost;
  bool pass = false;
};

class CheckList {
 public:
  explicit CheckList(const RunConfig& cfg) : cfg_(&cfg) {}

  /// value <= limit (the limit may be overridden by tol.<name>).
  void at_most(const std::string& name, double value, double limit);
  void at_least(const std::string& name, double value, double limit);
  /// lower <= value <= upper.
  void within(const std::string& name, double value, double lower, double upper);
  void flag(const std::string& name, bool ok);

  const std::vector<Check>& checks() const { return checks_; }
  bool all_pass() const;
  std::vector<std::string> failures() const;
  Json to_json() const;

 private:
  const RunConfig* cfg_;
  std::vector<Check> checks_;
};

/// Top-level report skeleton with schema_version and command.
Json report_header(const std::string& command, const RunConfig& cfg);
Json to_json(const TailReport& t);
Json to_json(const Point& p, int d);

/// Pretty JSON with sorted keys and a trailing newline.
void write_report(const std::string& path, const Json& report);

}  // namespace wsp::cli
