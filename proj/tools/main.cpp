#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "runner/config.hpp"
#include "runner/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"parabolic nonlocal solver and estimate verifier"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "run a configured experiment");
  std::string config_path;
  std::string scenario_override;
  std::string alpha_override;
  std::string out_override;
  std::optional<long> seed_override;
  std::optional<int> threads_override;
  run->add_option("config", config_path, "experiment config file")->required();
  run->add_option("--scenario", scenario_override,
                  "override the configured scenario");
  run->add_option("--alpha", alpha_override,
                  "override the sweep (comma-separated alpha values)");
  run->add_option("--out", out_override, "override the output directory");
  run->add_option("--seed", seed_override, "override the random seed");
  run->add_option("--threads", threads_override, "thread budget for the sweep");

  CLI11_PARSE(app, argc, argv);

  using nlparab::tools::ConfigError;
  using nlparab::tools::ExperimentConfig;

  try {
    ExperimentConfig cfg = nlparab::tools::load_config(config_path);
    if (!scenario_override.empty()) cfg.scenario = scenario_override;
    if (!alpha_override.empty()) {
      // reuse the config parser so the override gets the same validation
      cfg.sweep = nlparab::tools::parse_config("sweep = " + alpha_override).sweep;
    }
    if (!out_override.empty()) cfg.out_dir = out_override;
    if (seed_override) {
      if (*seed_override < 0) {
        std::cerr << "config error: field seed: must be nonnegative\n";
        return 2;
      }
      cfg.seed = static_cast<unsigned long long>(*seed_override);
    }
    if (threads_override) {
      if (*threads_override < 1) {
        std::cerr << "config error: field threads: must be at least 1\n";
        return 2;
      }
      cfg.threads = *threads_override;
    }
    return nlparab::tools::run_experiment(cfg, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
