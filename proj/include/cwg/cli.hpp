#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cwg {

/// Exit codes shared by every subcommand. `check` alone uses kUnbalanced.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUnbalanced = 1;
inline constexpr int kExitError = 2;

/// Environment variable holding the default angle tolerance (radians).
inline constexpr const char* kAngleToleranceEnv = "CWG_ANGLE_TOL";

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cwg
