#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gaussbreak {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitNumerical = 2 };

/// Runs one command line (args excludes the program name). Reports go to
/// `out` as JSON, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gaussbreak
