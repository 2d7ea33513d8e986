#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace flounder::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitNoAnswer = 1,
  kExitUsage = 2,
  kExitFloundered = 3,
};

struct Config {
  std::uint32_t solve_depth = 64;
  std::uint32_t enumerate_depth = 12;
  std::uint32_t base_depth = 3;
  std::uint64_t answers = 0;
  std::uint32_t extraneous = 8;
  long long int_lo = 0;
  long long int_hi = 16;
  std::string rule = "left";
  std::uint64_t seed = 0;
  std::string format = "text";
};

// Reads a JSON object with the keys of Config.  Unknown keys are rejected.
Config load_config(const std::string& path);

// Runs one command line (args[0] is the program name).  Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flounder::cli
