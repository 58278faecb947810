#pragma once

namespace wsp::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitIo = 3,
};

/// Parses argv and runs one subcommand.
int run_cli(int argc, char** argv);

}  // namespace wsp::cli
