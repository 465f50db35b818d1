#include "nlparab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlparab/operator.hpp"

namespace nlparab {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

GapResult finish(double lhs, double rhs,
                 std::vector<std::pair<std::string, double>> inputs) {
  GapResult r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = lhs - rhs;
  r.inputs = std::move(inputs);
  return r;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string(what) +
                                              " must be positive");
}

}  // namespace

GapResult::GapResult() : constant_required(kNan) {}

GapResult mean_value_gap(const std::vector<double>& fp,
                         const std::vector<double>& gp, double f_a, double f_b,
                         double g_a, double g_b, double a, double b) {
  if (fp.empty() || gp.empty())
    throw std::invalid_argument("empty derivative partition");
  if (fp.size() != gp.size())
    throw std::invalid_argument("derivative partitions differ in size");
  if (!(b > a)) throw std::invalid_argument("interval must satisfy b > a");
  double best = -kInf;
  for (std::size_t i = 0; i < fp.size(); ++i)
    best = std::max(best, fp[i] + gp[i] * gp[i]);
  const double sf = (f_b - f_a) / (b - a);
  const double sg = (g_b - g_a) / (b - a);
  return finish(best, sf + sg * sg, {{"a", a}, {"b", b}});
}

GapResult convex_gap(double a, double b, double q) {
  require_positive(a, "a");
  require_positive(b, "b");
  if (!(q > 0.0) || q == 1.0)
    throw std::invalid_argument("q must be positive and distinct from 1");
  const double lhs = (b - a) * (std::pow(a, -q) - std::pow(b, -q));
  const double half = 0.5 * (1.0 - q);
  const double diff = std::pow(b, half) - std::pow(a, half);
  const double rhs = 4.0 * q / ((1.0 - q) * (1.0 - q)) * diff * diff;
  return finish(lhs, rhs, {{"a", a}, {"b", b}, {"q", q}});
}

GapResult guelle_one(double a, double b, double q, double tau1, double tau2) {
  require_positive(a, "a");
  require_positive(b, "b");
  if (!(q > 1.0)) throw std::invalid_argument("q must exceed 1");
  if (tau1 < 0.0 || tau2 < 0.0)
    throw std::invalid_argument("tau factors must be nonnegative");
  const double theta = std::max(4.0, 0.5 * (6.0 * q - 5.0));
  const double lhs = (b - a) * (std::pow(tau1, q + 1.0) * std::pow(a, -q) -
                                std::pow(tau2, q + 1.0) * std::pow(b, -q));
  // expanded so that tau = 0 contributes exact zeros (all tau powers are
  // positive once 1-q < 0 is folded into them)
  const double half = 0.5 * (1.0 - q);
  const double mid =
      (std::pow(tau2, q) * tau1 * std::pow(b, 1.0 - q) -
       2.0 * std::pow(tau1 * tau2, 0.5 * (q + 1.0)) * std::pow(a * b, half) +
       std::pow(tau1, q) * tau2 * std::pow(a, 1.0 - q)) /
      (q - 1.0);
  const double dt = tau2 - tau1;
  const double damp = theta * dt * dt *
                      (std::pow(tau2, q - 1.0) * std::pow(b, 1.0 - q) +
                       std::pow(tau1, q - 1.0) * std::pow(a, 1.0 - q));
  return finish(lhs, mid - damp,
                {{"a", a}, {"b", b}, {"q", q}, {"tau1", tau1},
                 {"tau2", tau2}});
}

GapResult guelle_two(double a, double b, double q, double tau1, double tau2) {
  require_positive(a, "a");
  require_positive(b, "b");
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("q must lie in (0,1)");
  if (tau1 < 0.0 || tau2 < 0.0)
    throw std::invalid_argument("tau factors must be nonnegative");
  const double zeta = 4.0 * q / (1.0 - q);
  const double zeta1 = zeta / 6.0;
  const double zeta2 = zeta + 9.0 / q;
  const double lhs =
      (b - a) * (tau1 * tau1 * std::pow(a, -q) -
                 tau2 * tau2 * std::pow(b, -q));
  const double half = 0.5 * (1.0 - q);
  const double diff = tau2 * std::pow(b, half) - tau1 * std::pow(a, half);
  const double dt = tau2 - tau1;
  const double rhs = zeta1 * diff * diff -
                     zeta2 * dt * dt *
                         (std::pow(b, 1.0 - q) + std::pow(a, 1.0 - q));
  return finish(lhs, rhs,
                {{"a", a}, {"b", b}, {"q", q}, {"tau1", tau1},
                 {"tau2", tau2}});
}

GapResult log_gap(double a, double b) {
  require_positive(a, "a");
  require_positive(b, "b");
  const double lhs = (a - b) * (1.0 / b - 1.0 / a);
  const double d = std::log(a) - std::log(b);
  return finish(lhs, d * d, {{"a", a}, {"b", b}});
}

GapResult log_form_bound(const Kernel& kernel, const Grid& grid,
                         const std::vector<double>& w,
                         const std::vector<double>& psi, double t) {
  if (w.size() != grid.size() || psi.size() != grid.size())
    throw std::invalid_argument("grid function size mismatch");
  for (double v : w)
    if (!(v > 0.0))
      throw std::invalid_argument("w must be positive everywhere");
  const DiscreteOperator op = assemble(kernel, grid, t);

  std::vector<double> test(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    test[i] = -psi[i] * psi[i] / w[i];
  const double lhs = op.form(w, test);

  double logsum = 0.0;
  const std::size_t n = grid.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(psi[i] > 0.0)) continue;
    const double li = std::log(w[i] / psi[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!(psi[j] > 0.0)) continue;
      const double wij = op.weight(int(i), int(j));
      if (wij == 0.0) continue;
      const double d = li - std::log(w[j] / psi[j]);
      logsum += 2.0 * wij * psi[i] * psi[j] * d * d;
    }
  }
  const double rhs = logsum - 3.0 * op.form(psi, psi);
  return finish(lhs, rhs, {{"t", t}, {"nodes", double(grid.size())}});
}

GapResult sobolev_ratio(const Grid& grid, const std::vector<double>& v,
                        double alpha, double R) {
  if (v.size() != grid.size())
    throw std::invalid_argument("grid function size mismatch");
  if (!(R > 0.0 && R <= 2.0))
    throw std::invalid_argument("radius must lie in (0, 2]");
  bool nonzero = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (v[i] == 0.0) continue;
    nonzero = true;
    if (norm(grid.nodes[i]) >= R + 1e-12)
      throw std::invalid_argument("function not supported in the ball");
  }
  if (!nonzero) throw std::invalid_argument("zero function");

  const double hd = std::pow(grid.h, grid.dim);
  const double sigma = 3.0 / (3.0 - alpha);
  double mass = 0.0, l2 = 0.0;
  for (double x : v) {
    mass += std::pow(std::abs(x), 2.0 * sigma);
    l2 += x * x;
  }
  const double lhs = std::pow(hd * mass, 1.0 / sigma);

  // the seminorm part carries its own (2-alpha) factor through the kernel
  // normalization; this is where uniformity as alpha -> 2 is decided
  const Kernel frac =
      make_fractional(grid.dim, alpha, Normalization::two_minus_alpha);
  const DiscreteOperator op = assemble(frac, grid, 0.0);
  const double energy = hd * op.form(v, v);
  const double rhs = energy + std::pow(R, -alpha) * hd * l2;

  GapResult r = finish(lhs, rhs,
                       {{"alpha", alpha}, {"R", R},
                        {"nodes", double(grid.size())}});
  r.constant_required = rhs > 0.0 ? lhs / rhs : kInf;
  return r;
}

GapResult poincare_ratio(const Kernel& kernel, const Grid& grid,
                         const std::vector<double>& v, double t) {
  if (v.size() != grid.size())
    throw std::invalid_argument("grid function size mismatch");
  const double hd = std::pow(grid.h, grid.dim);
  std::vector<double> weight(grid.size());
  double wsum = 0.0, vw = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    weight[i] = std::max(0.0, std::min(1.5 - norm(grid.nodes[i]), 1.0));
    wsum += weight[i];
    vw += weight[i] * v[i];
  }
  const double mean = vw / wsum;
  double lhs = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    lhs += (v[i] - mean) * (v[i] - mean) * weight[i] * hd;

  const DiscreteOperator op = assemble(kernel, grid, t);
  double rhs = 0.0;
  const std::size_t n = grid.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (weight[i] == 0.0) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = std::min(weight[i], weight[j]);
      if (m == 0.0) continue;
      const double wij = op.weight(int(i), int(j));
      if (wij == 0.0) continue;
      const double d = v[i] - v[j];
      rhs += 2.0 * wij * d * d * m;
    }
  }
  rhs *= hd;

  GapResult r = finish(lhs, rhs, {{"t", t}, {"nodes", double(grid.size())}});
  r.constant_required = lhs == 0.0 ? 0.0 : (rhs > 0.0 ? lhs / rhs : kInf);
  return r;
}

}  // namespace nlparab
