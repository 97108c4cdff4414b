#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latbound::cli {

/// Exit codes of run().
inline constexpr int kOk = 0;
inline constexpr int kAssertionFailed = 1;
inline constexpr int kUsageError = 2;

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct Subcommand {
  std::string name;       // as typed, e.g. "demo cone"
  std::string operation;  // the library operation or demo it maps to
};

/// Every subcommand with the operation it exposes.
const std::vector<Subcommand>& registry();

}  // namespace latbound::cli
