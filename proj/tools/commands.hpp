#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fuzzyest::cli {

/// Runs the command line `args` (program name excluded) and returns the exit
/// code: 0 on success, 1 on an error (one "error: ..." line on `err`), 2 on a
/// usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fuzzyest::cli
