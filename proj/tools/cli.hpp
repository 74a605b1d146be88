#ifndef BNCI_TOOLS_CLI_HPP
#define BNCI_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace bnci::cli {

/// Runs one command line (without the program name). Returns the exit code:
/// 0 success or "true", 1 "false" or refuted, 2 errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bnci::cli

#endif  // BNCI_TOOLS_CLI_HPP
