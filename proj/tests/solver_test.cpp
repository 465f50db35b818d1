#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nlparab/solver.hpp"

using namespace nlparab;

namespace {

std::vector<double> bump_initial(const Grid& g) {
  std::vector<double> u(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.nodes[i][0];
    u[i] = std::max(0.0, 1.0 - x * x);
  }
  return u;
}

}  // namespace

TEST_CASE("implicit step obeys the maximum principle") {
  Kernel k = make_fractional(1, 1.5);
  Grid g = build_grid(1.0, 3.0, 0.1, 1);
  SolutionField u =
      solve(k, g, nullptr, bump_initial(g), ExteriorDatum{}, {0.0, 0.5});
  for (const auto& slice : u.values)
    for (double v : slice) {
      CHECK(v >= -1e-12);
      CHECK(v <= 1.0 + 1e-12);
    }
}

TEST_CASE("interior mass decreases with zero exterior data") {
  Kernel k = make_fractional(1, 1.5);
  Grid g = build_grid(1.0, 3.0, 0.1, 1);
  SolutionField u =
      solve(k, g, nullptr, bump_initial(g), ExteriorDatum{}, {0.0, 0.5});
  double first = 0.0, last = 0.0;
  for (int i : g.interior) {
    first += u.values.front()[i];
    last += u.values.back()[i];
  }
  CHECK(last < first);
  CHECK(last > 0.0);
}

TEST_CASE("constant data is a steady state") {
  Kernel k = make_fractional(1, 1.7);
  Grid g = build_grid(1.0, 3.0, 0.1, 1);
  std::vector<double> init(g.size(), 2.0);
  ExteriorDatum ext{[](double, Point) { return 2.0; },
                    [](double) { return 2.0; }};
  SolutionField u = solve(k, g, nullptr, init, ext, {0.0, 0.4});
  for (const auto& slice : u.values)
    for (double v : slice) CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("collar carries the exterior datum at every stored time") {
  Kernel k = make_fractional(1, 1.5);
  Grid g = build_grid(1.0, 3.0, 0.1, 1);
  ExteriorDatum ext{[](double t, Point x) { return t + x[0]; }, nullptr};
  SolutionField u =
      solve(k, g, nullptr, bump_initial(g), ext, {0.0, 0.3}, 0.1);
  for (std::size_t n = 0; n < u.times.size(); ++n)
    for (int i : g.collar)
      CHECK(u.values[n][i] ==
            doctest::Approx(u.times[n] + g.nodes[i][0]).epsilon(1e-12));
}

TEST_CASE("default step size is h^min(alpha,1)") {
  Kernel k = make_fractional(1, 1.5);
  Grid g = build_grid(1.0, 3.0, 0.1, 1);
  SolutionField u =
      solve(k, g, nullptr, bump_initial(g), ExteriorDatum{}, {0.0, 0.5});
  CHECK(u.dt == doctest::Approx(0.1).epsilon(0.05));
  Kernel k2 = make_fractional(1, 0.5);
  SolutionField v =
      solve(k2, g, nullptr, bump_initial(g), ExteriorDatum{}, {0.0, 0.5});
  // span is split into round(span / h^min(alpha,1)) equal steps
  const double expected = 0.5 / std::round(0.5 / std::pow(0.1, 0.5));
  CHECK(v.dt == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("theta outside [1/2, 1] is rejected") {
  Kernel k = make_fractional(1, 1.5);
  Grid g = build_grid(1.0, 3.0, 0.2, 1);
  std::vector<double> init(g.size(), 0.0);
  CHECK_THROWS_AS(
      solve(k, g, nullptr, init, ExteriorDatum{}, {0.0, 0.5}, 0.1, 0.4),
      std::invalid_argument);
  CHECK_THROWS_AS(
      solve(k, g, nullptr, init, ExteriorDatum{}, {0.0, 0.5}, 0.1, 1.1),
      std::invalid_argument);
}

TEST_CASE("weak residual of a discrete solution is round-off") {
  Kernel k = make_fractional(1, 1.5);
  Grid g = build_grid(1.0, 3.0, 0.1, 1);
  SpaceTimeFn f = [](double t, Point x) {
    return 0.2 * std::cos(t) * std::exp(-x[0] * x[0]);
  };
  SolutionField u =
      solve(k, g, f, bump_initial(g), ExteriorDatum{}, {0.0, 1.0}, 0.0125);
  std::vector<std::vector<double>> phi(u.times.size(),
                                       std::vector<double>(g.size(), 0.0));
  for (std::size_t n = 0; n < u.times.size(); ++n)
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = g.nodes[i][0];
      if (std::fabs(x) < 0.8)
        phi[n][i] = (0.8 - std::fabs(x)) * (1.0 + 0.3 * u.times[n]);
    }
  CHECK(std::fabs(residual_weak(u, phi, 0.1, 0.9)) < 1e-10);
}

TEST_CASE("steklov of a linear-in-time field shifts by half the window") {
  Kernel k = make_fractional(1, 1.5);
  Grid g = build_grid(1.0, 3.0, 0.2, 1);
  SolutionField u;
  u.grid = g;
  u.kernel = k;
  u.dt = 0.1;
  for (int n = 0; n <= 10; ++n) u.times.push_back(0.1 * n);
  u.values.assign(u.times.size(), std::vector<double>(g.size()));
  for (std::size_t n = 0; n < u.times.size(); ++n)
    for (std::size_t i = 0; i < g.size(); ++i)
      u.values[n][i] = u.times[n];
  SolutionField s = steklov(u, 0.2);  // window = 2 dt: trapezoid is exact
  for (std::size_t n = 0; n < s.times.size(); ++n)
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (s.times[n] >= 1.0 - 0.2 - 1e-12) {
        CHECK(s.values[n][i] == 0.0);
      } else {
        CHECK(s.values[n][i] ==
              doctest::Approx(s.times[n] + 0.1).epsilon(1e-12));
      }
    }
}

TEST_CASE("steklov contracts every lp norm when the window is a step multiple") {
  Kernel k = make_fractional(1, 1.5);
  Grid g = build_grid(1.0, 3.0, 0.25, 1);
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    SolutionField u;
    u.grid = g;
    u.kernel = k;
    u.dt = 0.05;
    for (int n = 0; n <= 20; ++n) u.times.push_back(0.05 * n);
    u.values.assign(u.times.size(), std::vector<double>(g.size()));
    for (auto& slice : u.values)
      for (auto& v : slice) v = gauss(rng);
    SolutionField s = steklov(u, 0.15);
    for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
      const double ns = field_lp_norm(s, p, 0.0, 1.0);
      const double nu = field_lp_norm(u, p, 0.0, 1.0);
      CHECK(ns <= nu * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("lp norm of a constant field is the measure power") {
  Kernel k = make_fractional(1, 1.5);
  Grid g = build_grid(1.0, 3.0, 0.5, 1);
  SolutionField u;
  u.grid = g;
  u.kernel = k;
  u.dt = 0.25;
  for (int n = 0; n < 4; ++n) u.times.push_back(0.25 * n);
  u.values.assign(4, std::vector<double>(g.size(), 3.0));
  // 13 nodes * h 0.5 * 4 slices * dt 0.25 = 6.5 cells of measure
  const double measure = 13 * 0.5 * 4 * 0.25;
  CHECK(field_lp_norm(u, 1.0, 0.0, 1.0) ==
        doctest::Approx(3.0 * measure).epsilon(1e-12));
  CHECK(field_lp_norm(u, 2.0, 0.0, 1.0) ==
        doctest::Approx(3.0 * std::sqrt(measure)).epsilon(1e-12));
  CHECK(field_lp_norm(u, std::numeric_limits<double>::infinity(), 0.0, 1.0) ==
        doctest::Approx(3.0).epsilon(1e-15));
}
