#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace netsync::cli {

/// Run one CLI invocation (args exclude the program name) against the given
/// output/error streams. Returns the process exit code:
///   0 success, 1 reproduce-paper threshold failure, 2 config/argument
///   error, 3 numerical blow-up, 4 no limit cycle detected.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace netsync::cli
