#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rse {

/// Process exit codes of the `rse` tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInvalidInput = 2,
  kExitPrecondition = 3,
  kExitDefect = 4,
};

/// Runs the `rse` command line; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rse
