#pragma once

#include <ostream>

namespace dslab::cli {

/// Exit statuses: every check passed, some check failed, usage error.
enum ExitCode { kPass = 0, kFail = 1, kUsage = 2 };

/// Full command-line entry point. Results go to `out` (or the -o file),
/// diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dslab::cli
