#include "runner/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace nlparab::tools {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double num(const std::string& field, const std::string& value) {
  const char* s = value.c_str();
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end == s || *end != '\0') {
    throw ConfigError(field, "config error: field " + field +
                                 ": not a number: " + value);
  }
  return v;
}

long integer(const std::string& field, const std::string& value) {
  double v = num(field, value);
  if (v != std::floor(v)) {
    throw ConfigError(field,
                      "config error: field " + field + ": not an integer");
  }
  return static_cast<long>(v);
}

bool boolean(const std::string& field, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError(field, "config error: field " + field +
                               ": expected true or false, got " + value);
}

std::vector<double> num_list(const std::string& field,
                             const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(num(field, item));
  }
  if (out.empty()) {
    throw ConfigError(field, "config error: field " + field + ": empty list");
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(line, "config error: field " + line +
                                  ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.rfind("kernel.", 0) == 0) {
      cfg.kernel[key.substr(7)] = value;
    } else if (key == "grid.h") {
      cfg.h = num(key, value);
      if (cfg.h <= 0.0)
        throw ConfigError(key, "config error: field grid.h: must be positive");
    } else if (key == "grid.collar") {
      cfg.collar = num(key, value);
    } else if (key == "grid.omega") {
      cfg.omega = num(key, value);
    } else if (key == "grid.dim") {
      cfg.dim = static_cast<int>(integer(key, value));
      if (cfg.dim != 1 && cfg.dim != 2)
        throw ConfigError(key, "config error: field grid.dim: must be 1 or 2");
    } else if (key == "solver.dt") {
      if (value == "intrinsic") {
        cfg.dt.reset();
        cfg.dt_intrinsic = true;
      } else if (value == "spatial") {
        cfg.dt.reset();
        cfg.dt_intrinsic = false;
      } else {
        cfg.dt = num(key, value);
        if (*cfg.dt <= 0.0)
          throw ConfigError(
              key, "config error: field solver.dt: must be positive");
      }
    } else if (key == "solver.theta") {
      cfg.theta = num(key, value);
      if (cfg.theta < 0.5 || cfg.theta > 1.0)
        throw ConfigError(
            key, "config error: field solver.theta: must lie in [1/2, 1]");
    } else if (key == "sweep") {
      cfg.sweep = num_list(key, value);
    } else if (key == "scenario") {
      cfg.scenario = value;
    } else if (key == "seed") {
      const long v = integer(key, value);
      if (v < 0)
        throw ConfigError(key,
                          "config error: field seed: must be nonnegative");
      cfg.seed = static_cast<unsigned long long>(v);
    } else if (key == "out") {
      cfg.out_dir = value;
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(integer(key, value));
      if (cfg.threads < 1)
        throw ConfigError(key,
                          "config error: field threads: must be at least 1");
    } else if (key == "export_fields") {
      cfg.export_fields = boolean(key, value);
    } else if (key == "trials.algebraic") {
      cfg.trials_algebraic = integer(key, value);
      if (cfg.trials_algebraic < 1)
        throw ConfigError(key, "config error: field " + key + ": must be positive");
    } else if (key == "trials.mean_value") {
      cfg.trials_mean_value = integer(key, value);
      if (cfg.trials_mean_value < 1)
        throw ConfigError(key, "config error: field " + key + ": must be positive");
    } else if (key == "probes.functional") {
      cfg.functional_probes = static_cast<int>(integer(key, value));
      if (cfg.functional_probes < 1)
        throw ConfigError(key, "config error: field " + key + ": must be positive");
    } else if (key.rfind("threshold.", 0) == 0) {
      cfg.thresholds[key.substr(10)] = num(key, value);
    } else {
      throw ConfigError(key, "config error: field " + key + ": unknown field");
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config", "config error: cannot read " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate_config(const ExperimentConfig& cfg) {
  static const char* known[] = {"harnack", "holder", "inequalities",
                                "membership", "full"};
  if (std::find(std::begin(known), std::end(known), cfg.scenario) ==
      std::end(known)) {
    throw ConfigError("scenario", "config error: field scenario: unknown tag " +
                                      cfg.scenario);
  }
  if (cfg.sweep.empty()) {
    throw ConfigError("sweep", "config error: field sweep: empty sweep");
  }
  double alpha0 = 0.4;
  if (auto it = cfg.kernel.find("alpha0"); it != cfg.kernel.end()) {
    alpha0 = num("kernel.alpha0", it->second);
  }
  for (double a : cfg.sweep) {
    if (!(a > alpha0 && a < 2.0)) {
      char buf[128];
      std::snprintf(buf, sizeof(buf),
                    "config error: field sweep: alpha %g outside the "
                    "admissible range (%g, 2)",
                    a, alpha0);
      throw ConfigError("sweep", buf);
    }
  }
  if (cfg.collar < 3.0 * cfg.omega) {
    throw ConfigError("grid.collar",
                      "config error: field grid.collar: must be at least "
                      "three interior radii");
  }
  // constructibility of the kernel at the first swept alpha
  try {
    kernel_for_alpha(cfg, cfg.sweep.front());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    std::string what = e.what();
    std::string field = "kernel";
    if (auto pos = what.rfind(": "); pos != std::string::npos)
      field = "kernel." + what.substr(pos + 2);
    throw ConfigError(field, "config error: field " + field + ": " + what);
  }
}

Kernel kernel_for_alpha(const ExperimentConfig& cfg, double alpha) {
  KernelSpec spec = cfg.kernel;
  const std::string kind =
      spec.count("kind") ? spec.at("kind") : std::string("fractional");
  if (kind == "sequence") {
    // alpha_n = 2 - 1/(n+1) must invert to a whole index
    const double n_real = 1.0 / (2.0 - alpha) - 1.0;
    const long n = std::lround(n_real);
    if (n < 0 || std::fabs(2.0 - 1.0 / (double(n) + 1.0) - alpha) > 1e-9) {
      char buf[128];
      std::snprintf(buf, sizeof(buf),
                    "config error: field sweep: alpha %g is not a sequence "
                    "order 2 - 1/(n+1)",
                    alpha);
      throw ConfigError("sweep", buf);
    }
    spec["n"] = std::to_string(n);
  } else {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", alpha);
    spec["alpha"] = buf;
  }
  return kernel_from_spec(spec);
}

std::optional<double> dt_for_alpha(const ExperimentConfig& cfg, double alpha) {
  if (cfg.dt) return cfg.dt;
  if (cfg.dt_intrinsic) return std::pow(cfg.h, alpha);
  return std::nullopt;  // solver default h^{min(alpha,1)}
}

}  // namespace nlparab::tools
