#pragma once

#include <iosfwd>

namespace hjsweep::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNotConverged = 2 };

/// Parses argv and runs one subcommand (solve, converge, trajectory,
/// visibility). Results go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hjsweep::cli
