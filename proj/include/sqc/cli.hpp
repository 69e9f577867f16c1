#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sqc {

// Exit-code protocol of the sqc-sim tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitNumerical = 3,
  kExitTimeIndependent = 10,
  kExitTimeDependent = 11,
  kExitNonMarkovian = 12,
};

// Runs the command line `args` (without the program name), writing CSV or
// reports to `out` and diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Reads a key=value config file ('#' starts a comment) and turns it into
// long-flag arguments; "key=true" becomes a bare flag, "key=false" is dropped.
std::vector<std::string> config_to_args(const std::string& path);

}  // namespace sqc
