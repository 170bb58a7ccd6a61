#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace raypareto::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitSolve = 2;

/// Runs one subcommand (anchors, frontier, map, check-b, filter). `args`
/// excludes the program name. Results go to --out when given, else to `out`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double v);

}  // namespace raypareto::cli
