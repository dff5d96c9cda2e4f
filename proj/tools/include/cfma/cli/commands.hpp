#pragma once

#include <string>
#include <vector>

#include "cfma/cli/config.hpp"

namespace cfma::cli {

struct CommandResult {
  std::string text;  // full file contents in the configured format
  int exit_code = 0;
  std::vector<std::string> warnings;
};

// Runs the configured command. Engine errors (cfma::Error) propagate.
CommandResult execute(const RunConfig& config);

}  // namespace cfma::cli
