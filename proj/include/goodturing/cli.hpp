#ifndef GOODTURING_CLI_HPP
#define GOODTURING_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace goodturing {

enum ExitStatus : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitInputError = 2,
  // gt --mode ratio with c_l = 0.
  kExitUndefinedEstimate = 3,
};

// Runs the command line; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace goodturing

#endif  // GOODTURING_CLI_HPP
