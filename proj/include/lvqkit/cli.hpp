#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lvqkit {

enum ExitCode : int {
    kExitOk = 0,
    kExitIo = 2,
    kExitContract = 3,
    kExitInvariant = 4,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lvqkit
