#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "noiselab/budget.hpp"
#include "noiselab/experiments.hpp"

namespace noiselab::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kInvalidConfig = 2 };

struct RunConfig {
  std::string command;  // "verify" or "run"
  std::string target;   // e.g. "flows", "clt"
  std::map<std::string, std::string> params;
  std::uint64_t seed = experiments::kDefaultSeed;
  std::size_t samples = 0;  // 0 selects the target's default
  std::string format = "json";
  std::string out;  // empty writes to stdout
  Budget budget;
};

/// Parameter names accepted by a target, with their defaults.
const std::map<std::string, std::string>& target_defaults(const std::string& command, const std::string& target);

/// Targets of a command, in help order.
std::vector<std::string> targets(const std::string& command);

/// Throws InvalidParameter on unknown targets or keys and on malformed values.
void validate(const RunConfig& config);

/// Parses argv. Returns the exit code when parsing ends the program (help or
/// errors), after printing to `err`; otherwise fills `config` and returns -1.
int parse_args(int argc, const char* const* argv, RunConfig& config, std::ostream& out, std::ostream& err);

/// Runs the configured verification or experiment, writes the artifact and one
/// summary line per check on `err`, and returns the exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace noiselab::cli
