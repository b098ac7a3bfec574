#pragma once

#include <iosfwd>

namespace anisolag::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsageError = 2 };

/// Entry point of the `anisolag` command. Reports go to `out` (or --out),
/// diagnostics and the verify-suite summary table go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace anisolag::cli
