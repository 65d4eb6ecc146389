#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mbl::cli {

enum ExitCode : int {
    ok = 0,
    config_error = 1,
    numerical_failure = 2,
};

/// Runs the command line `args` (without the program name). Human-readable
/// reports go to `out`, diagnostics to `err`; data files go to --out or,
/// when absent, to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mbl::cli
