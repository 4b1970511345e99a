#pragma once

#include <iosfwd>

namespace cliffbie::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitGateFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

/// Command-line entry point. Reports go to `out` (or the --out file),
/// diagnostics and the gate summary to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cliffbie::cli
