#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ppt {

/// Process exit codes of the `ppt` command line tool.
enum ExitCode : int { kExitOk = 0, kExitComputeFailure = 1, kExitUsage = 2 };

/// Runs the `ppt` CLI on `args` (without the program name). Records go to
/// `out`, usage diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "2,3.5,1" into rates; throws std::invalid_argument on bad input.
std::vector<double> parse_rate_list(const std::string& text);

}  // namespace ppt
