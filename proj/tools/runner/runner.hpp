#pragma once

#include <iosfwd>

#include "runner/config.hpp"

namespace nlparab::tools {

// Executes the configured scenario: fans the per-alpha jobs over the thread
// budget, then a single collector writes every report file into out_dir.
// Returns the process exit status: 0 all criteria pass, 1 a criterion
// failed. Config problems throw ConfigError (exit 2 is main's concern).
int run_experiment(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace nlparab::tools
