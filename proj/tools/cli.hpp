#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entropic::cli {

/// Runs one command line (args excludes the program name). Returns the exit
/// code: 0 success, 1 invalid input, 2 numerical failure or failed selftest.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entropic::cli
