#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fiperiod::cli {

enum ExitCode : int { ok = 0, parse_error = 2, infeasible = 3, inconclusive = 4 };

/// Runs the fiperiod command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fiperiod::cli
