#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace svf::cli {

/// Exit codes: 0 pass/found/multiple, 2 violation/infeasible, 1 invalid input or error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNegative = 2;

/// Runs one command. args excludes the program name. The JSON report goes to
/// `out`; usage and diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace svf::cli
