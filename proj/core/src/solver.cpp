#include "nlparab/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

#include "nlparab/operator.hpp"

namespace nlparab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// trapezoid integral of the piecewise-linear interpolant of (times, v(times))
// over [a, a + window]; caller guarantees a + window <= times.back()
double window_average(const std::vector<double>& times,
                      const std::function<double(double)>& v, double a,
                      double window) {
  const double b = a + window;
  std::size_t n = 0;
  while (times[n + 1] <= a + 1e-15 * (1.0 + std::abs(a))) ++n;
  double acc = 0.0;
  double t_lo = a, v_lo = 0.0;
  {
    const double dt = times[n + 1] - times[n];
    const double s = (a - times[n]) / dt;
    v_lo = (1.0 - s) * v(times[n]) + s * v(times[n + 1]);
  }
  while (times[n + 1] < b - 1e-15 * (1.0 + std::abs(b))) {
    const double v_hi = v(times[n + 1]);
    acc += 0.5 * (times[n + 1] - t_lo) * (v_lo + v_hi);
    t_lo = times[n + 1];
    v_lo = v_hi;
    ++n;
  }
  const double dt = times[n + 1] - times[n];
  const double s = (b - times[n]) / dt;
  const double v_hi = (1.0 - s) * v(times[n]) + s * v(times[n + 1]);
  acc += 0.5 * (b - t_lo) * (v_lo + v_hi);
  return acc / window;
}

// dual pairing of the energy form against an interior-supported test slice:
// -h^d * sum_i phi_i (Lu)_i, split into the pair part and the far-field part
double energy_pairing(const DiscreteOperator& op, const std::vector<double>& u,
                      const std::vector<double>& phi, double far) {
  const Grid& g = op.grid();
  const double hd = std::pow(g.h, g.dim);
  double tail_part = 0.0;
  for (int i : g.interior) {
    const auto idx = std::size_t(i);
    if (phi[idx] != 0.0) tail_part += phi[idx] * op.tail(i) * (far - u[idx]);
  }
  return hd * (0.5 * op.form(u, phi) - tail_part);
}

}  // namespace

std::size_t SolutionField::nearest_time(double t) const {
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return 0;
  if (it == times.end()) return times.size() - 1;
  const std::size_t hi = std::size_t(it - times.begin());
  return (t - times[hi - 1] <= times[hi] - t) ? hi - 1 : hi;
}

double SolutionField::forcing_sup() const {
  if (!forcing) return 0.0;
  double s = 0.0;
  for (double t : times)
    for (std::size_t i = 0; i < grid.size(); ++i)
      s = std::max(s, std::abs(forcing(t, grid.nodes[i])));
  return s;
}

SolutionField solve(const Kernel& kernel, const Grid& grid, SpaceTimeFn f,
                    const std::vector<double>& initial,
                    ExteriorDatum exterior, std::pair<double, double> t_span,
                    std::optional<double> dt, double theta) {
  if (!(theta >= 0.5 && theta <= 1.0))
    throw std::invalid_argument("theta outside the stable range [1/2, 1]");
  if (!(t_span.second > t_span.first))
    throw std::invalid_argument("empty time span");
  if (initial.size() != grid.size())
    throw std::invalid_argument("initial data size does not match grid");
  for (double v : initial)
    if (!std::isfinite(v))
      throw std::invalid_argument("initial data must be finite");
  const double span = t_span.second - t_span.first;
  double step = dt ? *dt : std::pow(grid.h, std::min(kernel.alpha(), 1.0));
  if (!(step > 0.0)) throw std::invalid_argument("dt must be positive");
  const long nsteps = std::max(1l, std::lround(span / step));
  step = span / double(nsteps);

  const bool tdep = kernel.time_dependent();
  DiscreteOperator op = assemble(kernel, grid, t_span.first);

  const std::vector<int>& interior = grid.interior;
  const std::vector<int>& collar = grid.collar;
  const long ni = long(interior.size());

  // interior system  A u = rhs,  A = I + dt*theta*(diag(rowsum+tail) - W)
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;  // coupling of interior rows to collar values
  Eigen::LLT<Eigen::MatrixXd> llt;
  auto build = [&](const DiscreteOperator& o) {
    A = Eigen::MatrixXd::Zero(ni, ni);
    B = Eigen::MatrixXd::Zero(ni, long(collar.size()));
    for (long a = 0; a < ni; ++a) {
      const int i = interior[std::size_t(a)];
      double rowsum = 0.0;
      for (long b = 0; b < ni; ++b) {
        const int j = interior[std::size_t(b)];
        if (j == i) continue;
        const double w = o.weight(i, j);
        if (w < 0.0)
          throw std::runtime_error(
              "step matrix lost the monotone sign structure");
        rowsum += w;
        A(a, b) = -step * theta * w;
      }
      for (long b = 0; b < long(collar.size()); ++b) {
        const double w = o.weight(i, collar[std::size_t(b)]);
        if (w < 0.0)
          throw std::runtime_error(
              "step matrix lost the monotone sign structure");
        rowsum += w;
        B(a, b) = w;
      }
      A(a, a) = 1.0 + step * theta * (rowsum + o.tail(i));
    }
    llt.compute(A);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error(
          "linear solve failure: step matrix is not positive definite");
  };
  build(op);

  SolutionField field;
  field.exterior = exterior;
  field.forcing = f;
  field.kernel = kernel;
  field.grid = grid;
  field.dt = step;
  field.theta = theta;
  field.times.reserve(std::size_t(nsteps) + 1);
  field.values.reserve(std::size_t(nsteps) + 1);

  std::vector<double> u = initial;
  for (int c : collar)
    u[std::size_t(c)] = exterior.node(t_span.first, grid.nodes[std::size_t(c)]);
  field.times.push_back(t_span.first);
  field.values.push_back(u);

  DiscreteOperator op_expl = op;  // operator at the left time when theta < 1
  for (long n = 0; n < nsteps; ++n) {
    const double t0 = t_span.first + double(n) * step;
    const double t1 = t_span.first + double(n + 1) * step;
    const double tth = t0 + theta * step;
    if (tdep) {
      if (theta < 1.0) op_expl = assemble(kernel, grid, t0);
      op = assemble(kernel, grid, t1);
      build(op);
    }

    Eigen::VectorXd rhs(ni);
    std::vector<double> lu;
    if (theta < 1.0) lu = op_expl.apply(u, exterior.beyond(t0));
    Eigen::VectorXd g(long(collar.size()));
    for (long b = 0; b < long(collar.size()); ++b)
      g(b) = exterior.node(t1, grid.nodes[std::size_t(collar[std::size_t(b)])]);
    const Eigen::VectorXd bnd = B * g;
    const double far1 = exterior.beyond(t1);
    for (long a = 0; a < ni; ++a) {
      const int i = interior[std::size_t(a)];
      const auto idx = std::size_t(i);
      double r = u[idx];
      if (theta < 1.0) r += step * (1.0 - theta) * lu[idx];
      if (f) r += step * f(tth, grid.nodes[idx]);
      r += step * theta * (bnd(a) + op.tail(i) * far1);
      rhs(a) = r;
    }
    const Eigen::VectorXd x = llt.solve(rhs);
    for (long a = 0; a < ni; ++a) {
      if (!std::isfinite(x(a)))
        throw std::runtime_error(
            "linear solve failure: non-finite values after back substitution");
      u[std::size_t(interior[std::size_t(a)])] = x(a);
    }
    for (int c : collar)
      u[std::size_t(c)] = exterior.node(t1, grid.nodes[std::size_t(c)]);
    field.times.push_back(t1);
    field.values.push_back(u);
  }
  return field;
}

double residual_weak(const SolutionField& field,
                     const std::vector<std::vector<double>>& phi, double t1,
                     double t2, const SpaceTimeFn& forcing_override) {
  const Grid& grid = field.grid;
  if (phi.size() != field.times.size())
    throw std::invalid_argument("test field not aligned with solution times");
  for (const auto& slice : phi) {
    if (slice.size() != grid.size())
      throw std::invalid_argument("test field slice does not match grid");
    for (int c : grid.collar)
      if (slice[std::size_t(c)] != 0.0)
        throw std::invalid_argument(
            "test function not supported in the interior");
  }
  const std::size_t n1 = field.nearest_time(t1);
  const std::size_t n2 = field.nearest_time(t2);
  if (n2 <= n1) throw std::invalid_argument("degenerate time window");

  const double hd = std::pow(grid.h, grid.dim);
  const SpaceTimeFn& f = forcing_override ? forcing_override : field.forcing;
  const bool tdep = field.kernel.time_dependent();
  DiscreteOperator op = assemble(field.kernel, grid, field.times[n1]);

  auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };

  double res = hd * (dot(phi[n2], field.values[n2]) -
                     dot(phi[n1], field.values[n1]));
  for (std::size_t n = n1; n < n2; ++n) {
    const double dtn = field.times[n + 1] - field.times[n];
    const double tth = field.times[n] + field.theta * dtn;
    // discrete product rule: the time-derivative term pairs u^n with the
    // forward difference of phi so a theta-scheme solution telescopes exactly
    double ddt = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      ddt += field.values[n][i] * (phi[n + 1][i] - phi[n][i]);
    res -= hd * ddt;

    if (tdep) op = assemble(field.kernel, grid, field.times[n + 1]);
    double energy = field.theta * energy_pairing(op, field.values[n + 1],
                                                 phi[n + 1],
                                                 field.exterior.beyond(
                                                     field.times[n + 1]));
    if (field.theta < 1.0) {
      DiscreteOperator op0 =
          tdep ? assemble(field.kernel, grid, field.times[n]) : op;
      energy += (1.0 - field.theta) *
                energy_pairing(op0, field.values[n], phi[n + 1],
                               field.exterior.beyond(field.times[n]));
    }
    res += dtn * energy;

    if (f) {
      double fs = 0.0;
      for (int i : grid.interior) {
        const auto idx = std::size_t(i);
        if (phi[n + 1][idx] != 0.0)
          fs += phi[n + 1][idx] * f(tth, grid.nodes[idx]);
      }
      res -= dtn * hd * fs;
    }
  }
  return res;
}

SolutionField steklov(const SolutionField& field, double window) {
  const double span = field.times.back() - field.times.front();
  if (!(window > 0.0 && window < span))
    throw std::invalid_argument("averaging window outside (0, span)");
  SolutionField out = field;
  const double cutoff =
      field.times.back() - window - 1e-12 * (1.0 + std::abs(span));
  for (std::size_t n = 0; n < field.times.size(); ++n) {
    const double t = field.times[n];
    if (t >= cutoff) {
      std::fill(out.values[n].begin(), out.values[n].end(), 0.0);
      continue;
    }
    for (std::size_t i = 0; i < field.grid.size(); ++i) {
      auto v = [&](double tt) {
        return field.values[field.nearest_time(tt)][i];
      };
      out.values[n][i] = window_average(field.times, v, t, window);
    }
  }
  // the averaged field's boundary description: same average of the datum
  const auto times = field.times;
  const ExteriorDatum orig = field.exterior;
  const double t_end = field.times.back();
  out.exterior.at = [times, orig, window, t_end, cutoff](double t, Point x) {
    if (t >= cutoff) return 0.0;
    auto v = [&](double tt) { return orig.node(tt, x); };
    return window_average(times, v, t, window);
  };
  out.exterior.far = [times, orig, window, cutoff](double t) {
    if (t >= cutoff) return 0.0;
    auto v = [&](double tt) { return orig.beyond(tt); };
    return window_average(times, v, t, window);
  };
  return out;
}

double field_lp_norm(const SolutionField& field, double p, double t1,
                     double t2) {
  if (!(p >= 1.0)) throw std::invalid_argument("p must be at least 1");
  const Grid& grid = field.grid;
  const double hd = std::pow(grid.h, grid.dim);
  const double dt = field.times.size() > 1
                        ? (field.times.back() - field.times.front()) /
                              double(field.times.size() - 1)
                        : 1.0;
  const double tol = 1e-12 * (1.0 + std::abs(t2 - t1));
  if (p == kInf) {
    double m = 0.0;
    for (std::size_t n = 0; n < field.times.size(); ++n) {
      if (field.times[n] < t1 - tol || field.times[n] >= t2 - tol) continue;
      for (double v : field.values[n]) m = std::max(m, std::abs(v));
    }
    return m;
  }
  double acc = 0.0;
  for (std::size_t n = 0; n < field.times.size(); ++n) {
    if (field.times[n] < t1 - tol || field.times[n] >= t2 - tol) continue;
    double s = 0.0;
    for (double v : field.values[n]) s += std::pow(std::abs(v), p);
    acc += dt * hd * s;
  }
  return std::pow(acc, 1.0 / p);
}

}  // namespace nlparab
