#ifndef HYPERBIB_CLI_HPP
#define HYPERBIB_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperbib::cli {

/// Runs one command line (args excludes the program name). Returns the exit
/// status: 0 on success, 1 on a fatal input/validation error, 2 on bad usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperbib::cli

#endif  // HYPERBIB_CLI_HPP
