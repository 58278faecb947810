#pragma once

#include <string>
#include <vector>

#include "wsp/cli/config.hpp"
#include "wsp/cli/report.hpp"
#include "wsp/parallel.hpp"

namespace wsp::cli {

struct VerifyResult {
  Json report;
  bool pass = false;
};

/// Suite names accepted by run_verify, "all" excluded.
const std::vector<std::string>& verify_suites();

/// Runs one invariant suite (or "all") on built-in fixtures. The pressure and
/// leray suites take dim, N, L, r0 and r1 from the config; the others use
/// fixed small grids. Check names are "<suite>.<check>" and every limit can be
/// overridden with tol.<suite>.<check>.
VerifyResult run_verify(const std::string& suite, const RunConfig& cfg, const ExecPolicy& exec);

}  // namespace wsp::cli
