#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wsp/cli/commands.hpp"
#include "wsp/cli/config.hpp"
#include "wsp/cli/report.hpp"
#include "wsp/cli/verify.hpp"
#include "wsp/parallel.hpp"

using namespace wsp;
using namespace wsp::cli;

namespace {

namespace fs = std::filesystem;

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "wsp");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / "wsp_cli_unit";
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("config keys, values and validation") {
  RunConfig cfg;
  cfg.set("N", " 64 ");
  cfg.set("L", "4.5");
  cfg.set("closure", "true");
  cfg.set("tol.pressure.poisson_residual", "0.1");
  CHECK(cfg.N == 64);
  CHECK(cfg.L == 4.5);
  CHECK(cfg.closure);
  CHECK(cfg.tolerance("pressure.poisson_residual", 1.0) == 0.1);
  CHECK(cfg.tolerance("other", 1.0) == 1.0);
  CHECK_THROWS_AS(cfg.set("N", "6x"), ParameterError);
  CHECK_THROWS_AS(cfg.set("colour", "red"), ParameterError);
  CHECK_THROWS_AS(cfg.set("closure", "yes"), ParameterError);
  cfg.r1 = 0.5;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
}

TEST_CASE("config file with comments") {
  const fs::path p = scratch_dir() / "run.cfg";
  {
    std::ofstream os(p);
    os << "# comment\n dim = 3  # trailing\n\nseed=11\n";
  }
  RunConfig cfg;
  load_config_file(p.string(), cfg);
  CHECK(cfg.dim == 3);
  CHECK(cfg.seed == 11);
  {
    std::ofstream os(p);
    os << "dim 3\n";
  }
  CHECK_THROWS_AS(load_config_file(p.string(), cfg), ParameterError);
  CHECK_THROWS_AS(load_config_file((scratch_dir() / "missing.cfg").string(), cfg), IoError);
}

TEST_CASE("check list honours tolerance overrides") {
  RunConfig cfg;
  cfg.tolerances["a"] = 2.0;
  CheckList c(cfg);
  c.at_most("a", 1.5, 1.0);
  c.at_least("b", 0.5, 1.0);
  c.within("c", 0.5, 0.0, 1.0);
  CHECK(c.checks()[0].pass);
  CHECK_FALSE(c.checks()[1].pass);
  CHECK(c.checks()[2].pass);
  CHECK(c.failures() == std::vector<std::string>{"b"});
  CHECK(c.to_json()[0]["limit"] == 2.0);
}

TEST_CASE("workers come from the environment when set") {
  ::setenv("WSP_WORKERS", "3", 1);
  CHECK(workers_from_env(1) == 3);
  ::setenv("WSP_WORKERS", "zero", 1);
  CHECK(workers_from_env(2) == 2);
  ::unsetenv("WSP_WORKERS");
  CHECK(workers_from_env(5) == 5);
}

TEST_CASE("verify report does not depend on the worker count") {
  RunConfig cfg;
  const std::string one = run_verify("fields", cfg, ExecPolicy{1}).report.dump(2);
  CHECK(one == run_verify("fields", cfg, ExecPolicy{1}).report.dump(2));
  CHECK(one == run_verify("fields", cfg, ExecPolicy{4}).report.dump(2));
  CHECK(one.find("workers") == std::string::npos);
  CHECK_THROWS_AS(run_verify("nope", cfg, ExecPolicy{}), ParameterError);
}

TEST_CASE("cli exit codes") {
  const fs::path d = scratch_dir();
  CHECK(run({"--bogus"}) == kExitUsage);
  CHECK(run({"norms", "--input", (d / "absent.fld").string()}) == kExitIo);
  CHECK(run({"verify", "--suite", "fields", "--N", "7"}) == kExitUsage);
  CHECK(run({"verify", "--suite", "fields", "--r0", "2", "--r1", "1"}) == kExitUsage);
  CHECK(run({"verify", "--suite", "unknown"}) == kExitUsage);

  const fs::path bump = d / "bump.fld";
  CHECK(run({"gen-fixture", "--name", "vortex", "--N", "32", "--L", "4", "--frames", "1", "--out",
             bump.string()}) == kExitOk);
  const fs::path r1 = d / "r1.json", r2 = d / "r2.json";
  CHECK(run({"verify", "--suite", "fields", "--report", r1.string()}) == kExitOk);
  CHECK(run({"--workers", "2", "verify", "--suite", "fields", "--report", r2.string()}) == kExitOk);
  CHECK(slurp(r1) == slurp(r2));
  CHECK(run({"verify", "--suite", "fields", "--report", (d / "no_dir" / "r.json").string()}) == kExitIo);
}
