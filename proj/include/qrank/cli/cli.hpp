// Command-line front end. Exit statuses: 0 success, 1 invariant violation,
// 2 input error.
#pragma once

#include <iosfwd>

namespace qrank::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInput = 2;

/// Parses argv and runs one subcommand. Results go to --output (atomic
/// write) or `out`; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qrank::cli
