#pragma once

#include <string>

namespace pseudoroll {

/// Front-end options shared by every subcommand.  A positive step or grid
/// overrides the scenario values; tol gates the pass/fail exit code of the
/// verifying commands.
struct RunOptions {
  std::string scenario_path;
  std::string out_dir = ".";
  double tol = 1e-6;
  double step = 0;
  int grid = 0;
};

/// Execute one subcommand (roll, verify, transport, reach, partition,
/// frames, config-matrices, lift-check, selftest).  Returns the process
/// exit code: 0 on success, 1 on a tolerance/verification failure.  Input
/// problems are reported by throwing (ParseError, IoError, or any domain
/// error from the library); the caller maps those to exit code 2.
int run_command(const std::string& command, const RunOptions& opts);

}  // namespace pseudoroll
