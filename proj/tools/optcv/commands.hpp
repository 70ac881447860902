#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"

namespace optcv::cli {

/// Files to write (name relative to the output directory, contents) and the
/// text to print. Commands build everything in memory so a failure never
/// leaves partial output behind.
struct CommandOutput {
  std::vector<std::pair<std::string, std::string>> files;
  std::string report;
};

CommandOutput cmd_simulate(const ExperimentConfig& config);
CommandOutput cmd_analytic(const ExperimentConfig& config);
CommandOutput cmd_split(const ExperimentConfig& config);
CommandOutput cmd_compare(const ExperimentConfig& config);
CommandOutput cmd_stats_mcnemar(std::uint64_t b, std::uint64_t c, bool exact);
CommandOutput cmd_stats_meng(const std::string& population, const std::string& responded);

void write_outputs(const CommandOutput& output, const std::string& directory);

enum ExitCode : int { kExitOk = 0, kExitNumeric = 1, kExitConfig = 2 };

/// Full command-line entry point. `env_seed` stands in for OPTCV_SEED.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& env_seed);

}  // namespace optcv::cli
