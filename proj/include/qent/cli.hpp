#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qent {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitPropertyFailure = 1,
  kExitParse = 2,
  kExitValidation = 3,
  kExitCap = 4,
  kExitUsage = 5,
};

/// Runs the command line `args` (args[0] is the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit status.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace qent
