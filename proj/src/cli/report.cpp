#include "wsp/cli/report.hpp"

#include <cmath>
#include <fstream>

#include "wsp/errors.hpp"

namespace wsp::cli {

namespace {

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::AtMost: return "<=";
    case Relation::AtLeast: return ">=";
    case Relation::Within: return "within";
  }
  return "?";
}

// NaN never passes a comparison and is reported as null.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

void CheckList::at_most(const std::string& name, double value, double limit) {
  const double lim = cfg_->tolerance(name, limit);
  checks_.push_back({name, value, lim, 0.0, Relation::AtMost, value <= lim});
}

void CheckList::at_least(const std::string& name, double value, double limit) {
  const double lim = cfg_->tolerance(name, limit);
  checks_.push_back({name, value, lim, 0.0, Relation::AtLeast, value >= lim});
}

void CheckList::within(const std::string& name, double value, double lower, double upper) {
  checks_.push_back({name, value, upper, lower, Relation::Within, value >= lower && value <= upper});
}

void CheckList::flag(const std::string& name, bool ok) {
  checks_.push_back({name, ok ? 1.0 : 0.0, 1.0, 0.0, Relation::AtLeast, ok});
}

bool CheckList::all_pass() const {
  for (const auto& c : checks_)
    if (!c.pass) return false;
  return true;
}

std::vector<std::string> CheckList::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks_)
    if (!c.pass) out.push_back(c.name);
  return out;
}

Json CheckList::to_json() const {
  Json arr = Json::array();
  for (const auto& c : checks_) {
    Json j;
    j["name"] = c.name;
    j["value"] = number(c.value);
    j["relation"] = relation_name(c.relation);
    j["limit"] = number(c.limit);
    if (c.relation == Relation::Within) j["lower"] = number(c.lower);
    j["pass"] = c.pass;
    arr.push_back(j);
  }
  return arr;
}

Json report_header(const std::string& command, const RunConfig& cfg) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["config"] = {{"dim", cfg.dim}, {"N", cfg.N},       {"L", cfg.L},
                 {"r0", cfg.r0},   {"r1", cfg.r1},     {"mode", cfg.mode},
                 {"seed", cfg.seed}, {"closure", cfg.closure}};
  return j;
}

Json to_json(const TailReport& t) {
  return {{"quantity", t.quantity}, {"data_norm", number(t.data_norm)},
          {"constant", number(t.constant)}, {"exponent", number(t.exponent)},
          {"bound", number(t.bound)}};
}

Json to_json(const Point& p, int d) {
  Json arr = Json::array();
  for (int a = 0; a < d; ++a) arr.push_back(number(p[a]));
  return arr;
}

void write_report(const std::string& path, const Json& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write report " + path, 0);
  out << report.dump(2) << '\n';
  if (!out) throw IoError("failed writing report " + path, 0);
}

}  // namespace wsp::cli
