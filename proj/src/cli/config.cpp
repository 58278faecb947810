#include "wsp/cli/config.hpp"

#include <charconv>
#include <fstream>

#include "wsp/errors.hpp"

namespace wsp::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ParameterError("config key '" + key + "': cannot parse '" + v + "'");
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty())
    throw ParameterError("config key '" + key + "': cannot parse '" + v + "'");
  return out;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "dim") {
    dim = parse_number<int>(key, v);
  } else if (key == "N") {
    N = parse_number<int>(key, v);
  } else if (key == "L") {
    L = parse_double(key, v);
  } else if (key == "r0") {
    r0 = parse_double(key, v);
  } else if (key == "r1") {
    r1 = parse_double(key, v);
  } else if (key == "mode") {
    mode = v;
  } else if (key == "seed") {
    seed = parse_number<std::uint64_t>(key, v);
  } else if (key == "workers") {
    workers = parse_number<int>(key, v);
  } else if (key == "closure") {
    if (v != "true" && v != "false") throw ParameterError("config key 'closure' takes true|false");
    closure = v == "true";
  } else if (key.rfind("tol.", 0) == 0 && key.size() > 4) {
    tolerances[key.substr(4)] = parse_double(key, v);
  } else {
    throw ParameterError("unknown config key '" + key + "'");
  }
}

void RunConfig::validate() const {
  if (dim != 2 && dim != 3) throw ParameterError("dim must be 2 or 3");
  if (N < 4 || N % 2 != 0) throw ParameterError("N must be even and >= 4");
  if (!(L > 0.0)) throw ParameterError("L must be positive");
  if (!(r0 > 0.0) || !(r1 > r0)) throw ParameterError("need 0 < r0 < r1");
  if (mode != "phi" && mode != "p0") throw ParameterError("mode must be phi or p0");
  if (workers < 1) throw ParameterError("workers must be >= 1");
}

double RunConfig::tolerance(const std::string& check, double fallback) const {
  const auto it = tolerances.find(check);
  return it == tolerances.end() ? fallback : it->second;
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path, 0);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParameterError(path + ":" + std::to_string(lineno) + ": expected key=value");
    cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

}  // namespace wsp::cli
