#pragma once

#include <iosfwd>

namespace zslab::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kMathFailure = 1;  // counterexample found or certificate rejected
inline constexpr int kUsage = 2;
inline constexpr int kBudget = 3;

// Parses argv, runs the subcommand and writes its JSON report to `out` (or to
// the --json path). Diagnostics go to `err`. Returns the exit code.
int parse_and_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zslab::cli
