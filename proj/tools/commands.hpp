#pragma once

#include "config.hpp"

#include <string>
#include <vector>

namespace pspin::cli {

/// Dispatches a validated config. Returns the process exit code:
/// 0 success, 2 config error, 3 numerical abort.
int run_command(const ExperimentConfig& cfg);

/// Full front-end (flag parsing included), callable in-process.
int cli_main(const std::vector<std::string>& args);

}  // namespace pspin::cli
