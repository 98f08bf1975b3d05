#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fcrystal::cli {

enum ExitCode : int {
  kOk = 0,
  kViolation = 1,
  kInvalidInput = 2,
  kResourceLimit = 3,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fcrystal::cli
