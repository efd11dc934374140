#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phasekit {

enum ExitCode { exit_ok = 0, exit_verify_failed = 1, exit_usage = 2, exit_io = 3 };

// args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phasekit
