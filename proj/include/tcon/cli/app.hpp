#pragma once

#include <iosfwd>

namespace tcon::cli {

/// Exit codes of the command-line runner.
enum ExitCode { kOk = 0, kBudgetViolation = 1, kConfigError = 2 };

/// Parses argv, runs one subcommand and writes `<out>/<command>.json` plus CSV
/// tables. Returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tcon::cli
