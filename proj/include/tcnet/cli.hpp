#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tcnet {

enum ExitCode : int {
  kExitSuccess = 0,
  kExitNoSolution = 1,
  kExitInputError = 2,
  kExitUsage = 3,
};

// Runs one CLI command. args[0] is the program name. Results go to `out`,
// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tcnet
