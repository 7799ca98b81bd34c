// commands.hpp: CLI command dispatch with the 0/1/2/3 exit-code contract

#pragma once

#include <iosfwd>

namespace rateaudit {

enum ExitCode : int { exit_pass = 0, exit_violation = 1, exit_inconclusive = 2, exit_input_error = 3 };

// Parses argv, runs one command and writes the report to `out` (or --out). Diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rateaudit
