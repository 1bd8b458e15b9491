#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace loopspace::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 2,
  kInputError = 3,
  kInternalError = 4,
};

/// Runs one invocation of the command-line tool. `args` excludes the program
/// name. JSON and CSV results go to `out`; diagnostics go to `err` as a single
/// "error: ..." line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace loopspace::cli
