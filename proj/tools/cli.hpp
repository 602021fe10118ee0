#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qic::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,
    kInputError = 2,
    kNumericalFailure = 3,
};

/// Runs the `qic` command line. `args` excludes the program name. Reports go
/// to `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qic::cli
