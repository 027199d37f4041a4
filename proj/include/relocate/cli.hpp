#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace relocate {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitPlannerFail = 2,
  kExitTimeout = 3,
  kExitInputError = 4,
};

/// Entry point of the `relocate` tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace relocate
