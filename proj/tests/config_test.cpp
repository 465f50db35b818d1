#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlparab/kernel_spec.hpp"
#include "runner/config.hpp"

using namespace nlparab;
using namespace nlparab::tools;

TEST_CASE("defaults survive an empty config") {
  ExperimentConfig cfg = parse_config("");
  CHECK(cfg.scenario == "full");
  CHECK(cfg.sweep == std::vector<double>{1.5, 1.9, 1.99});
  CHECK(cfg.h == 0.02);
  CHECK(cfg.theta == 1.0);
  CHECK_NOTHROW(validate_config(cfg));
}

TEST_CASE("keys parse into their slots") {
  ExperimentConfig cfg = parse_config(
      "kernel.kind = fractional\n"
      "kernel.dim = 1\n"
      "kernel.alpha0 = 0.3\n"
      "# comment line\n"
      "grid.h = 0.05\n"
      "grid.collar = 6\n"
      "grid.omega = 2\n"
      "solver.theta = 0.5\n"
      "solver.dt = 0.01\n"
      "sweep = 1.0, 1.5\n"
      "scenario = harnack\n"
      "seed = 42\n"
      "threads = 3\n"
      "trials.algebraic = 1000\n"
      "threshold.alpha_uniformity = 5\n");
  CHECK(cfg.kernel.at("alpha0") == "0.3");
  CHECK(cfg.h == 0.05);
  CHECK(cfg.collar == 6.0);
  CHECK(cfg.omega == 2.0);
  CHECK(cfg.theta == 0.5);
  REQUIRE(cfg.dt.has_value());
  CHECK(*cfg.dt == 0.01);
  CHECK(cfg.sweep == std::vector<double>{1.0, 1.5});
  CHECK(cfg.scenario == "harnack");
  CHECK(cfg.seed == 42);
  CHECK(cfg.threads == 3);
  CHECK(cfg.trials_algebraic == 1000);
  CHECK(cfg.threshold("alpha_uniformity", 10.0) == 5.0);
  CHECK(cfg.threshold("missing", 7.0) == 7.0);
  CHECK_NOTHROW(validate_config(cfg));
}

TEST_CASE("unknown keys name the offending field") {
  try {
    parse_config("grid.spacing = 0.1\n");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(e.field == "grid.spacing");
    CHECK(std::string(e.what()).find("unknown field") != std::string::npos);
  }
}

TEST_CASE("validation rejects sweeps outside the admissible order range") {
  ExperimentConfig cfg = parse_config("sweep = 2.5\n");
  try {
    validate_config(cfg);
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(e.field == "sweep");
  }
  // below alpha0 is just as inadmissible
  ExperimentConfig low = parse_config("sweep = 0.3\n");
  CHECK_THROWS_AS(validate_config(low), ConfigError);
}

TEST_CASE("validation rejects unknown scenarios and bad geometry") {
  CHECK_THROWS_AS(validate_config(parse_config("scenario = everything\n")),
                  ConfigError);
  CHECK_THROWS_AS(validate_config(parse_config("grid.collar = 4\n")),
                  ConfigError);  // collar must be at least 3 omega
  CHECK_THROWS_AS(parse_config("solver.theta = 0.4\n"), ConfigError);
}

TEST_CASE("per-sweep kernels carry the requested order") {
  ExperimentConfig cfg = parse_config("");
  Kernel k = kernel_for_alpha(cfg, 1.9);
  CHECK(k.alpha() == doctest::Approx(1.9).epsilon(1e-14));
  CHECK(k.dim() == 1);
}

TEST_CASE("sequence sweeps must hit the sequence orders") {
  ExperimentConfig cfg = parse_config("kernel.kind = sequence\n");
  Kernel k = kernel_for_alpha(cfg, 1.75);  // n = 3
  CHECK(k.alpha() == doctest::Approx(1.75).epsilon(1e-14));
  CHECK_THROWS_AS(kernel_for_alpha(cfg, 1.77), ConfigError);
}

TEST_CASE("step size policy") {
  ExperimentConfig intrinsic = parse_config("solver.dt = intrinsic\n");
  auto dt = dt_for_alpha(intrinsic, 1.5);
  REQUIRE(dt.has_value());
  CHECK(*dt == doctest::Approx(std::pow(intrinsic.h, 1.5)).epsilon(1e-14));
  ExperimentConfig spatial = parse_config("solver.dt = spatial\n");
  CHECK_FALSE(dt_for_alpha(spatial, 1.5).has_value());
  ExperimentConfig pinned = parse_config("solver.dt = 0.004\n");
  CHECK(*dt_for_alpha(pinned, 1.5) == 0.004);
}

TEST_CASE("kernel specs round-trip through the flat form") {
  KernelSpec spec{{"kind", "fractional"}, {"dim", "1"}, {"alpha", "1.5"},
                  {"normalization", "two_minus_alpha"}};
  Kernel k = kernel_from_spec(spec);
  CHECK(k.alpha() == 1.5);
  CHECK(k.density({0.0, 0.0}, {1.0, 0.0}) == doctest::Approx(0.5));
  KernelSpec out = kernel_to_spec(k);
  Kernel k2 = kernel_from_spec(out);
  CHECK(k2.density({0.0, 0.0}, {0.7, 0.0}) ==
        k.density({0.0, 0.0}, {0.7, 0.0}));

  KernelSpec cone{{"kind", "cone"},      {"alpha", "1.5"},
                  {"axis_x", "1"},       {"axis_y", "0"},
                  {"aperture", "0.5"},   {"lambda", "40"}};
  Kernel kc = kernel_from_spec(cone);
  CHECK(kc.dim() == 2);
  CHECK(kc.lambda() == 40.0);
  Kernel kc2 = kernel_from_spec(kernel_to_spec(kc));
  CHECK(kc2.density({0.0, 0.0}, {1.0, 0.0}) ==
        kc.density({0.0, 0.0}, {1.0, 0.0}));

  KernelSpec table{{"kind", "custom-table"}, {"dim", "1"},
                   {"alpha", "1.2"},         {"near_coef", "1"},
                   {"near_alpha", "1.2"},    {"radii", "1, 2"},
                   {"values", "3, 1"},       {"tail_coef", "0.5"},
                   {"tail_alpha", "1.4"}};
  Kernel kt = kernel_from_spec(table);
  Kernel kt2 = kernel_from_spec(kernel_to_spec(kt));
  CHECK(kt2.density({0.0, 0.0}, {1.5, 0.0}) ==
        kt.density({0.0, 0.0}, {1.5, 0.0}));
}

TEST_CASE("kernel spec errors name their field") {
  CHECK_THROWS_WITH_AS(kernel_from_spec({{"kind", "fractional"}}),
                       "kernel spec missing field: dim",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      kernel_from_spec(
          {{"kind", "fractional"}, {"dim", "1"}, {"alpha", "abc"}}),
      "kernel spec field is not a number: alpha", std::invalid_argument);
  CHECK_THROWS_WITH_AS(kernel_from_spec({{"kind", "pareto"}}),
                       "kernel spec field has unknown value: kind",
                       std::invalid_argument);
  CHECK_THROWS_AS(
      kernel_from_spec({{"kind", "custom-table"},
                        {"dim", "1"},
                        {"alpha", "1.2"},
                        {"near_coef", "1"},
                        {"near_alpha", "1.2"},
                        {"radii", "1, 2"},
                        {"values", "3"},
                        {"tail_coef", "0.5"},
                        {"tail_alpha", "1.4"}}),
      std::invalid_argument);
}

TEST_CASE("kernels without a flat form are rejected by the serializer") {
  Kernel k = make_fractional(1, 1.5).with_coefficient(
      [](double, Point, Point) { return 0.75; }, false);
  CHECK_THROWS_AS(kernel_to_spec(k), std::invalid_argument);
  GenericProfile p;
  p.k0 = [](Point x, Point y) { return std::pow(dist(x, y), -2.0); };
  p.tail_coef = 1.0;
  p.tail_alpha = 0.5;
  CHECK_THROWS_AS(kernel_to_spec(Kernel(1, 1.0, p)), std::invalid_argument);
}
