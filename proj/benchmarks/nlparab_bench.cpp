#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "nlparab/geometry.hpp"
#include "nlparab/inequalities.hpp"
#include "nlparab/membership.hpp"
#include "nlparab/moser.hpp"
#include "nlparab/operator.hpp"
#include "nlparab/solver.hpp"

using namespace nlparab;

namespace {

// index -> mesh width, coarse to fine
constexpr double kWidths[] = {0.1, 0.05, 0.025};

Grid grid_for(int idx) { return build_grid(2.0, 6.0, kWidths[idx], 1); }

std::vector<double> bump_on(const Grid& g) {
  std::vector<double> u(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = norm(g.nodes[i]);
    u[i] = std::max(0.0, 1.0 - r * r);
  }
  return u;
}

const SolutionField& shared_field() {
  static const SolutionField f = [] {
    const Grid g = build_grid(3.0, 9.0, 0.05, 1);
    const Kernel k = make_fractional(1, 1.9, Normalization::two_minus_alpha);
    std::vector<double> init(g.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double r = norm(g.nodes[i]);
      init[i] = std::max(0.0, 1.0 - r * r);
    }
    return solve(k, g, nullptr, init, ExteriorDatum{}, {-1.0, 1.0},
                 std::pow(0.05, 1.9));
  }();
  return f;
}

void BM_assemble(benchmark::State& state) {
  const Grid g = grid_for(int(state.range(0)));
  const Kernel k = make_fractional(1, 1.5, Normalization::two_minus_alpha);
  for (auto _ : state) {
    DiscreteOperator op = assemble(k, g);
    benchmark::DoNotOptimize(op);
  }
  state.SetLabel("h=" + std::to_string(kWidths[state.range(0)]));
}
BENCHMARK(BM_assemble)->DenseRange(0, 2);

void BM_apply(benchmark::State& state) {
  const Grid g = grid_for(int(state.range(0)));
  const Kernel k = make_fractional(1, 1.5, Normalization::two_minus_alpha);
  const DiscreteOperator op = assemble(k, g);
  const std::vector<double> u = bump_on(g);
  for (auto _ : state) {
    std::vector<double> lu = apply_L(op, u, 0.0);
    benchmark::DoNotOptimize(lu);
  }
  state.SetLabel("h=" + std::to_string(kWidths[state.range(0)]));
}
BENCHMARK(BM_apply)->DenseRange(0, 2);

void BM_form(benchmark::State& state) {
  const Grid g = grid_for(int(state.range(0)));
  const Kernel k = make_fractional(1, 1.5, Normalization::two_minus_alpha);
  const DiscreteOperator op = assemble(k, g);
  const std::vector<double> u = bump_on(g);
  for (auto _ : state) {
    double e = op.form(u, u);
    benchmark::DoNotOptimize(e);
  }
  state.SetLabel("h=" + std::to_string(kWidths[state.range(0)]));
}
BENCHMARK(BM_form)->DenseRange(0, 2);

// one implicit step including factorization amortized over the span
void BM_solve(benchmark::State& state) {
  const double alpha = state.range(0) == 0 ? 1.5 : 1.9;
  const Grid g = build_grid(2.0, 6.0, 0.05, 1);
  const Kernel k = make_fractional(1, alpha, Normalization::two_minus_alpha);
  const std::vector<double> init = bump_on(g);
  const double dt = std::pow(0.05, alpha);
  std::size_t steps = 0;
  for (auto _ : state) {
    SolutionField f = solve(k, g, nullptr, init, ExteriorDatum{},
                            {0.0, 100.0 * dt}, dt);
    steps += f.times.size() - 1;
    benchmark::DoNotOptimize(f);
  }
  state.SetItemsProcessed(int64_t(steps));
  state.SetLabel("alpha=" + std::to_string(alpha));
}
BENCHMARK(BM_solve)->DenseRange(0, 1)->Unit(benchmark::kMillisecond);

void BM_moment(benchmark::State& state) {
  const SolutionField& f = shared_field();
  const Cylinder q = harnack_domains(1.9).minus;
  const double p = state.range(0) == 0 ? 0.25 : 1.0;
  for (auto _ : state) {
    MomentValue m = moment(f, q, p);
    benchmark::DoNotOptimize(m);
  }
  state.SetLabel("p=" + std::to_string(p));
}
BENCHMARK(BM_moment)->DenseRange(0, 1);

void BM_iterate_inf(benchmark::State& state) {
  const SolutionField& f = shared_field();
  for (auto _ : state) {
    BoundReport r = iterate_inf(f, 0.5, 1.0, 1.0);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_iterate_inf);

void BM_sobolev(benchmark::State& state) {
  const Grid g = grid_for(int(state.range(0)));
  std::vector<double> v(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.nodes[i][0];
    if (std::fabs(x) < 2.0 - 1e-9) v[i] = std::exp(-x * x / 0.25);
  }
  for (auto _ : state) {
    GapResult r = sobolev_ratio(g, v, 1.5, 2.0);
    benchmark::DoNotOptimize(r);
  }
  state.SetLabel("h=" + std::to_string(kWidths[state.range(0)]));
}
BENCHMARK(BM_sobolev)->DenseRange(0, 2);

void BM_poincare(benchmark::State& state) {
  const Grid g = grid_for(int(state.range(0)));
  const Kernel k = make_fractional(1, 1.5, Normalization::two_minus_alpha);
  std::vector<double> v(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.nodes[i][0];
    if (std::fabs(x) < 2.0 - 1e-9) v[i] = std::exp(-x * x / 0.25);
  }
  for (auto _ : state) {
    GapResult r = poincare_ratio(k, g, v);
    benchmark::DoNotOptimize(r);
  }
  state.SetLabel("h=" + std::to_string(kWidths[state.range(0)]));
}
BENCHMARK(BM_poincare)->DenseRange(0, 2);

void BM_check_k1(benchmark::State& state) {
  const Kernel k = make_fractional(1, 1.5, Normalization::two_minus_alpha)
                       .with_class(0.4, 8.0);
  for (auto _ : state) {
    MembershipReport r = check_k1(k, origin, 1.0);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_check_k1);

}  // namespace

BENCHMARK_MAIN();
