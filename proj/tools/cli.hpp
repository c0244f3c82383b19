#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace krieger::cli {

enum ExitCode : int {
  kDefinite = 0,
  kInputError = 1,
  kInconclusive = 2,  // also: no witness within scope, labels disagree
  kInternalError = 3,
};

/// Runs one command. `args` includes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace krieger::cli
