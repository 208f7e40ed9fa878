#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace skewspec {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitPass = 0,
  kExitFalsified = 1,
  kExitUsage = 2,
};

/// Runs one subcommand (`map-check`, `leo`, `sft-info`, `gamma`, `fuzz`,
/// `shrink-demo`, `witness`, `verify`); args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skewspec
