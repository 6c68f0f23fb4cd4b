#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace gf2to1 {

inline constexpr std::string_view kVersion = "0.1.0";

/// Exit codes: 0 when every check passes, 1 when a mathematical verdict
/// fails, 2 for usage and parse errors.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdict = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name), writing reports
/// to `out` and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gf2to1
