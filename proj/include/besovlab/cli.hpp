#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace besovlab::cli {

enum ExitCode : int {
  kPass = 0,
  kBoundViolation = 1,
  kUsage = 2,
  kIo = 3,
};

/// Runs one command line (without the program name). Subcommands:
/// norm, simulate, clt, tails, entropy, verify; global --threads <k>.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace besovlab::cli
