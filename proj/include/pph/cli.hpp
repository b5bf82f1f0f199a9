#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pph {

/// Exit statuses of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_fail = 1, exit_usage = 2, exit_cap = 3 };

/// Runs one `pph` invocation; `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pph
