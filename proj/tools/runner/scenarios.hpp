#pragma once

#include <string>
#include <vector>

#include "nlparab/field.hpp"
#include "runner/config.hpp"
#include "runner/report.hpp"

namespace nlparab::tools {

// one reported constant: a named value plus the operation that produced it
struct ConstantRow {
  std::string name;
  double value = 0.0;
  std::string op;
};

// everything one (scenario part, alpha) job returns to the collector
struct AlphaBlock {
  std::string part;
  double alpha = 0.0;
  std::vector<ConstantRow> rows;
  std::vector<std::string> failures;     // hard failures, named
  std::string field_export;              // field CSV text when requested
};

AlphaBlock run_membership_alpha(const ExperimentConfig& cfg, double alpha);
AlphaBlock run_functional_alpha(const ExperimentConfig& cfg, double alpha);
AlphaBlock run_harnack_alpha(const ExperimentConfig& cfg, double alpha);
AlphaBlock run_holder_alpha(const ExperimentConfig& cfg, double alpha);

// alpha-free random-instance suites; each returns its worst-10 table
struct SuiteResult {
  std::string name;
  long trials = 0;
  long violations = 0;        // instances below the relative gap threshold
  double worst_rel_gap = 0.0; // most negative relative gap seen
  Table worst;                // worst-10 instances with inputs
};

std::vector<SuiteResult> run_algebraic_suites(const ExperimentConfig& cfg);

// the d = 1/2 benchmark solves behind the harnack and holder parts
SolutionField solve_harnack_benchmark(const ExperimentConfig& cfg, double alpha);
SolutionField solve_holder_benchmark(const ExperimentConfig& cfg, double alpha);

}  // namespace nlparab::tools
