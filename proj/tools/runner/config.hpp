#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlparab/kernel_spec.hpp"

namespace nlparab::tools {

// configuration problem tied to one field; main() turns these into exit 2
struct ConfigError : std::runtime_error {
  std::string field;
  ConfigError(std::string field_, const std::string& message)
      : std::runtime_error(message), field(std::move(field_)) {}
};

// One experiment: a kernel family, a grid, a solver setup, an alpha sweep,
// and a scenario tag. Parsed from a flat key=value file; every key is listed
// in parse_config and unknown keys are rejected by name.
struct ExperimentConfig {
  KernelSpec kernel{{"kind", "fractional"}, {"dim", "1"}};
  double h = 0.02;
  double collar = 9.0;
  double omega = 3.0;
  int dim = 1;
  std::optional<double> dt;   // fixed step; unset means a rule applies
  bool dt_intrinsic = true;   // dt = h^alpha per swept alpha; else h^min(alpha,1)
  double theta = 1.0;
  std::vector<double> sweep{1.5, 1.9, 1.99};
  std::string scenario = "full";
  unsigned long long seed = 1;
  std::string out_dir = "reports";
  int threads = 1;
  bool export_fields = false;
  long trials_algebraic = 200000;
  long trials_mean_value = 20000;
  int functional_probes = 20;
  std::map<std::string, double> thresholds;

  double threshold(const std::string& name, double fallback) const {
    auto it = thresholds.find(name);
    return it == thresholds.end() ? fallback : it->second;
  }
};

// Parses the flat text form: one `key = value` per line, '#' and ';' start
// comments, blank lines ignored. Throws ConfigError naming the field.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config(const std::string& path);

// Cross-field checks: sweep inside the admissible order range, scenario
// recognized, kernel spec constructible. Throws ConfigError.
void validate_config(const ExperimentConfig& cfg);

// kernel for one swept alpha; sequence kernels derive their index from alpha
Kernel kernel_for_alpha(const ExperimentConfig& cfg, double alpha);

// time step for one swept alpha, or nullopt for the solver default
std::optional<double> dt_for_alpha(const ExperimentConfig& cfg, double alpha);

}  // namespace nlparab::tools
