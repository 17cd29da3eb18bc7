#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lbg {

enum ExitCode : int {
  kExitPass = 0,
  kExitUsage = 1,
  kExitVerificationFailure = 2,
  kExitResourceLimit = 3,
  kExitCorrupt = 4,
};

// Runs one command line (args exclude the program name) and returns the exit
// code. Reports go to `out` unless --report names a file; diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lbg
