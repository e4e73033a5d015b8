#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isogroup::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitFixtures = 3;

/// Parses `args` (without the program name), runs one subcommand and
/// returns the process exit code. Results go to `out` unless --output is
/// given; diagnostics and usage text go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isogroup::cli
