#include "nlparab/moser.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "nlparab/operator.hpp"

namespace nlparab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double span_tol(const SolutionField& f) {
  return 1e-9 * (1.0 + std::fabs(f.times.back() - f.times.front()));
}

void check_field(const SolutionField& f) {
  if (f.times.size() < 2 || f.values.size() != f.times.size())
    throw std::invalid_argument("field holds no time history");
  for (const auto& row : f.values)
    if (row.size() != f.grid.size())
      throw std::invalid_argument("field slices do not match the grid");
}

void check_domain(const SolutionField& f, const Cylinder& cyl) {
  const double tol = span_tol(f);
  if (cyl.t_lo() < f.times.front() - tol || cyl.t_hi() > f.times.back() + tol)
    throw std::invalid_argument("cylinder outside field domain");
  const double stol = 1e-9 * (1.0 + f.grid.box_radius);
  if (norm_inf(cyl.center_x()) + cyl.radius() > f.grid.box_radius + stol)
    throw std::invalid_argument("cylinder outside field domain");
}

std::vector<std::size_t> nodes_inside(const Grid& g, const Cylinder& cyl) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (cyl.contains_space(g.nodes[i])) keep.push_back(i);
  return keep;
}

// log-domain accumulation of sum_cells w * val^p; values are cell midpoints
// in time, so a cell contributes when its midpoint lies inside the cylinder
struct RawMoment {
  double log_integral = -kInf;
  double mass = 0.0;
  long cells = 0;
};

// absolute: integrate |u|^p (zero values admitted for p > 0)
// otherwise: integrate (u + shift)^p and demand strict positivity
RawMoment raw_moment(const SolutionField& f, const Cylinder& cyl, double p,
                     double shift, bool absolute) {
  check_domain(f, cyl);
  const std::vector<std::size_t> keep = nodes_inside(f.grid, cyl);
  const double hd = f.grid.cell();

  RawMoment out;
  double peak = -kInf;
  for (int pass = 0; pass < 2; ++pass) {
    double sum = 0.0;
    for (std::size_t n = 0; n + 1 < f.times.size(); ++n) {
      const double tm = 0.5 * (f.times[n] + f.times[n + 1]);
      if (!cyl.contains_time(tm)) continue;
      const double w = (f.times[n + 1] - f.times[n]) * hd;
      const double lw = std::log(w);
      const auto& a = f.values[n];
      const auto& b = f.values[n + 1];
      for (std::size_t i : keep) {
        double v = 0.5 * (a[i] + b[i]) + shift;
        if (absolute) v = std::fabs(v);
        if (pass == 0) {
          out.mass += w;
          ++out.cells;
        }
        if (v <= 0.0) {
          if (absolute && p > 0.0) continue;
          throw std::invalid_argument(
              absolute ? "nonpositive values under a negative exponent"
                       : "field is not positive after the forcing shift");
        }
        const double lt = lw + p * std::log(v);
        if (pass == 0) {
          peak = std::max(peak, lt);
        } else {
          sum += std::exp(lt - peak);
        }
      }
    }
    if (pass == 0 && peak == -kInf) return out;  // everything vanished
    if (pass == 1) out.log_integral = peak + std::log(sum);
  }
  return out;
}

struct Extremes {
  double lo = kInf;
  double hi = -kInf;
  long count = 0;
};

// grid min/max of u + shift (or |u| when absolute) over nodes and slice
// times strictly inside the cylinder
Extremes region_extremes(const SolutionField& f, const Cylinder& cyl,
                         double shift, bool absolute) {
  check_domain(f, cyl);
  const std::vector<std::size_t> keep = nodes_inside(f.grid, cyl);
  Extremes ex;
  for (std::size_t n = 0; n < f.times.size(); ++n) {
    if (!cyl.contains_time(f.times[n])) continue;
    const auto& row = f.values[n];
    for (std::size_t i : keep) {
      double v = row[i] + shift;
      if (absolute) v = std::fabs(v);
      ex.lo = std::min(ex.lo, v);
      ex.hi = std::max(ex.hi, v);
      ++ex.count;
    }
  }
  return ex;
}

// m = u + |f|_inf; a vanishing forcing degenerates to a fixed small shift
double positivity_shift(const SolutionField& f) {
  const double fs = f.forcing_sup();
  return fs > 0.0 ? fs : 1e-8;
}

Cylinder side_cylinder(CylinderSide side, double radius, double alpha) {
  if (side == CylinderSide::minus)
    return Cylinder(0.0, origin, radius, alpha, Orientation::minus);
  return Cylinder(1.0 - std::pow(radius, alpha), origin, radius, alpha,
                  Orientation::plus);
}

void check_ladder_radii(double r, double R) {
  if (!(r >= 0.5 && r < R && R <= 1.0 + 1e-12))
    throw std::invalid_argument("radii must satisfy 1/2 <= r < R <= 1");
}

GapResult ratio_result(double lhs, double rhs,
                       std::vector<std::pair<std::string, double>> inputs) {
  GapResult g;
  g.lhs = lhs;
  g.rhs = rhs;
  g.gap = lhs - rhs;
  g.constant_required = rhs > 0.0 ? lhs / rhs : kInf;
  g.inputs = std::move(inputs);
  return g;
}

}  // namespace

double iteration_kappa(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("order must lie in (0,2)");
  return 1.0 + alpha / 3.0;
}

MomentValue moment(const SolutionField& field, const Cylinder& cyl, double p) {
  if (p == 0.0 || std::isnan(p))
    throw std::invalid_argument("moment exponent must be nonzero");
  check_field(field);

  MomentValue out{cyl, p, 0.0, 0.0};
  if (std::isinf(p)) {
    const Extremes ex = region_extremes(field, cyl, 0.0, true);
    if (ex.count == 0)
      throw std::invalid_argument("cylinder resolves no grid cells");
    out.value = p > 0.0 ? ex.hi : ex.lo;
    // report the covered quadrature measure alongside, same rule as below
    const RawMoment rm = raw_moment(field, cyl, 1.0, 0.0, true);
    out.mass = rm.mass;
    return out;
  }

  const RawMoment rm = raw_moment(field, cyl, p, 0.0, true);
  if (rm.cells == 0)
    throw std::invalid_argument("cylinder resolves no grid cells");
  out.mass = rm.mass;
  out.value = std::exp(rm.log_integral / p);
  return out;
}

GapResult moment_step(const SolutionField& field, double r, double R, double p,
                      CylinderSide side) {
  check_field(field);
  check_ladder_radii(r, R);
  const double alpha = field.kernel.alpha();
  const double kappa = iteration_kappa(alpha);
  if (!(p > 0.0))
    throw std::invalid_argument("exponent must be positive");
  if (side == CylinderSide::plus && p > 1.0 / kappa + 1e-15)
    throw std::invalid_argument(
        "forward-side exponent must lie in (0, 1/kappa]");

  const double shift = positivity_shift(field);
  const double sgn = side == CylinderSide::minus ? -1.0 : 1.0;
  const RawMoment num =
      raw_moment(field, side_cylinder(side, r, alpha), sgn * kappa * p, shift,
                 false);
  const RawMoment den =
      raw_moment(field, side_cylinder(side, R, alpha), sgn * p, shift, false);
  if (num.cells == 0 || den.cells == 0)
    throw std::invalid_argument("cylinder resolves no grid cells");

  const double lhs = std::exp(num.log_integral / kappa);
  const double denom = std::exp(den.log_integral);
  const double a_emp = lhs / denom;
  const double a_shape =
      (p + 1.0) * (p + 1.0) *
      (std::pow(R - r, -alpha) +
       1.0 / (std::pow(R, alpha) - std::pow(r, alpha)));
  return ratio_result(
      lhs, a_shape * denom,
      {{"A_emp", a_emp},
       {"A_shape", a_shape},
       {"r", r},
       {"R", R},
       {"p", p},
       {"kappa", kappa},
       {"shift", shift},
       {"side", sgn}});
}

BoundReport iterate_inf(const SolutionField& field, double r, double R,
                        double p) {
  check_field(field);
  check_ladder_radii(r, R);
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("exponent must lie in (0, 1]");
  const double alpha = field.kernel.alpha();
  const double kappa = iteration_kappa(alpha);
  const double shift = positivity_shift(field);

  const auto sched = [&](int m) {
    const double f = std::pow(0.5, m);
    if (alpha >= 1.0) return r + (R - r) * f;
    const double ra = std::pow(r, alpha);
    const double Ra = std::pow(R, alpha);
    return std::pow(ra + (Ra - ra) * f, 1.0 / alpha);
  };

  // run the exponent chain until it has overshot the sup-recovering power
  int steps = 1;
  while (p * std::pow(kappa, steps) < 64.0 && steps < 80) ++steps;

  const int d = field.grid.dim;
  const double g1 =
      alpha >= 1.0
          ? std::pow(R - r, d + alpha)
          : std::pow(std::pow(R, alpha) - std::pow(r, alpha),
                     (d + alpha) / alpha);

  BoundReport rep;
  rep.details = {{"G1", g1},
                 {"kappa", kappa},
                 {"shift", shift},
                 {"steps", double(steps)}};
  for (int m = 0; m < steps; ++m) {
    const double pm = p * std::pow(kappa, m);
    const GapResult step =
        moment_step(field, sched(m + 1), sched(m), pm, CylinderSide::minus);
    rep.details.emplace_back("r" + std::to_string(m), sched(m));
    rep.details.emplace_back("p" + std::to_string(m), pm);
    rep.details.emplace_back("step" + std::to_string(m),
                             step.constant_required);
  }
  rep.details.emplace_back("r" + std::to_string(steps), sched(steps));

  const Extremes ex = region_extremes(
      field, side_cylinder(CylinderSide::minus, r, alpha), shift, false);
  if (ex.count == 0)
    throw std::invalid_argument("cylinder resolves no grid cells");
  if (!(ex.lo > 0.0))
    throw std::runtime_error(
        "moment overflow: field is not bounded below on the iteration "
        "cylinder");
  rep.lhs = 1.0 / ex.lo;
  const RawMoment tail = raw_moment(
      field, side_cylinder(CylinderSide::minus, R, alpha), -p, shift, false);
  rep.rhs = std::exp(tail.log_integral / p);
  if (!std::isfinite(rep.lhs) || !std::isfinite(rep.rhs))
    throw std::runtime_error("moment overflow in the infimum iteration");
  rep.constant = g1 * std::pow(rep.lhs / rep.rhs, p);
  return rep;
}

BoundReport iterate_L1(const SolutionField& field, double r, double R,
                       double p) {
  check_field(field);
  check_ladder_radii(r, R);
  const double alpha = field.kernel.alpha();
  const double kappa = iteration_kappa(alpha);
  if (!(p > 0.0 && p < 1.0 / kappa))
    throw std::invalid_argument("exponent must lie in (0, 1/kappa)");
  const double shift = positivity_shift(field);

  const RawMoment num = raw_moment(
      field, side_cylinder(CylinderSide::plus, r, alpha), 1.0, shift, false);
  const RawMoment den = raw_moment(
      field, side_cylinder(CylinderSide::plus, R, alpha), p, shift, false);
  if (num.cells == 0 || den.cells == 0)
    throw std::invalid_argument("cylinder resolves no grid cells");

  const int d = field.grid.dim;
  const double alpha0 = field.kernel.alpha0();
  const double w1 = 2.0 * d + 6.0 + 4.0 / d;
  const double w2 = 2.0 * d / alpha0 + 3.0 + 2.0 / d;
  const double g2 =
      std::min(std::pow(R - r, w1), std::pow(alpha0 * (R - r), w2));
  const double q1 =
      side_cylinder(CylinderSide::plus, 1.0, alpha).measure(d);

  BoundReport rep;
  rep.lhs = std::exp(num.log_integral);
  rep.rhs = std::exp(den.log_integral / p);
  rep.constant = q1 * g2 * std::pow(rep.lhs / rep.rhs, p / (1.0 - p));
  rep.details = {{"G2", g2},        {"omega1", w1}, {"omega2", w2},
                 {"Q1_measure", q1}, {"kappa", kappa}, {"shift", shift}};
  return rep;
}

SublevelReport log_sublevel(const SolutionField& field, double s,
                            CylinderSide side) {
  check_field(field);
  if (!(s > 0.0)) throw std::invalid_argument("level must be positive");
  const double tol = span_tol(field);
  if (field.times.front() > -1.0 + tol || field.times.back() < 1.0 - tol)
    throw std::invalid_argument("field does not cover the reference cylinder");
  if (field.grid.box_radius < 1.5 - 1e-12)
    throw std::invalid_argument("field does not cover the reference cylinder");

  const double shift = positivity_shift(field);

  // centering constant: weighted spatial mean of -log(m/psi) at time 0,
  // weight psi^2 = ((3/2 - |x|) min 1) max 0
  const auto& u0 = field.values[field.nearest_time(0.0)];
  double wsum = 0.0;
  double vsum = 0.0;
  for (std::size_t i = 0; i < field.grid.size(); ++i) {
    const double w2 =
        std::clamp(1.5 - norm(field.grid.nodes[i]), 0.0, 1.0);
    if (w2 <= 0.0) continue;
    const double m = u0[i] + shift;
    if (!(m > 0.0))
      throw std::invalid_argument(
          "field must be strictly positive on the reference cylinder");
    vsum += w2 * (0.5 * std::log(w2) - std::log(m));
    wsum += w2;
  }
  const double a = vsum / wsum;

  const double alpha = field.kernel.alpha();
  const Cylinder q = side == CylinderSide::plus
                         ? Cylinder(0.0, origin, 1.0, alpha, Orientation::plus)
                         : side_cylinder(CylinderSide::minus, 1.0, alpha);
  const std::vector<std::size_t> keep = nodes_inside(field.grid, q);
  const double hd = field.grid.cell();

  double measure = 0.0;
  for (std::size_t n = 0; n + 1 < field.times.size(); ++n) {
    const double tm = 0.5 * (field.times[n] + field.times[n + 1]);
    if (!q.contains_time(tm)) continue;
    const double w = (field.times[n + 1] - field.times[n]) * hd;
    const auto& va = field.values[n];
    const auto& vb = field.values[n + 1];
    for (std::size_t i : keep) {
      const double m = 0.5 * (va[i] + vb[i]) + shift;
      if (!(m > 0.0))
        throw std::invalid_argument(
            "field must be strictly positive on the reference cylinder");
      const double lg = std::log(m) + a;
      const bool hit = side == CylinderSide::plus ? lg < -s : lg > s;
      if (hit) measure += w;
    }
  }

  const double b1 = field.grid.dim == 1 ? 2.0 : M_PI;
  SublevelReport rep;
  rep.a = a;
  rep.s = s;
  rep.measure = measure;
  rep.bound_unit = b1 / s;
  rep.c_required = measure * s / b1;
  return rep;
}

BombieriGiustiReport bombieri_giusti_check(
    const std::map<std::pair<double, double>, double>& moments,
    const std::map<double, double>& sublevel, double u1_measure,
    const BombieriGiustiParams& params) {
  if (!(params.theta >= 0.5 && params.theta < 1.0))
    throw std::invalid_argument("theta must lie in [1/2, 1)");
  if (!(params.eta > 0.0 && params.eta <= 1.0))
    throw std::invalid_argument("eta must lie in (0, 1]");
  if (!(params.m > 0.0) || !(params.c0 > 0.0) || !(params.p0 > 0.0))
    throw std::invalid_argument("m, c0, p0 must be positive");
  if (!(u1_measure > 0.0))
    throw std::invalid_argument("domain measure must be positive");

  const double inv_p0 = std::isinf(params.p0) ? 0.0 : 1.0 / params.p0;
  const double p_cap = std::min(1.0, params.eta * params.p0);

  // split the family into target entries (exponent p0) and source entries
  // (small admissible exponents)
  std::vector<std::pair<double, double>> targets;  // (r, value)
  std::vector<std::tuple<double, double, double>> sources;  // (R, p, value)
  for (const auto& [key, value] : moments) {
    const auto [rad, p] = key;
    if (!(value > 0.0) || !std::isfinite(value))
      throw std::invalid_argument("moment values must be positive and finite");
    if (rad < params.theta - 1e-12 || rad > 1.0 + 1e-12)
      throw std::invalid_argument("moment radius outside [theta, 1]");
    const bool is_target = std::isinf(params.p0)
                               ? std::isinf(p) && p > 0.0
                               : std::fabs(p - params.p0) <=
                                     1e-12 * std::max(1.0, params.p0);
    if (is_target) targets.emplace_back(rad, value);
    else if (p > 0.0 && p < p_cap - 1e-15)
      sources.emplace_back(rad, p, value);
  }
  if (targets.empty() || sources.empty())
    throw std::invalid_argument("incomplete moment family");
  if (sublevel.empty())
    throw std::invalid_argument(
        "incomplete moment family: no sublevel measurements");

  BombieriGiustiReport rep;
  for (const auto& [rt, mt] : targets) {
    for (const auto& [rs, p, ms] : sources) {
      if (rs <= rt + 1e-12) continue;
      const double e = 1.0 / p - inv_p0;
      const double c0 = std::pow(rs - rt, params.m) * u1_measure *
                        std::pow(mt / ms, 1.0 / e);
      rep.c0_moment = std::max(rep.c0_moment, c0);
      ++rep.pairs_checked;
    }
  }
  if (rep.pairs_checked == 0)
    throw std::invalid_argument("incomplete moment family");

  for (const auto& [s, meas] : sublevel) {
    if (!(s > 0.0) || meas < 0.0)
      throw std::invalid_argument("sublevel entries must have s > 0, measure >= 0");
    rep.c0_sublevel = std::max(rep.c0_sublevel, meas * s / u1_measure);
  }

  const auto at_theta = std::find_if(
      targets.begin(), targets.end(), [&](const auto& t) {
        return std::fabs(t.first - params.theta) <= 1e-9;
      });
  if (at_theta == targets.end())
    throw std::invalid_argument("incomplete moment family");

  rep.hypotheses_pass =
      rep.c0_moment <= params.c0 * (1.0 + 1e-12) &&
      rep.c0_sublevel <= params.c0 * (1.0 + 1e-12);
  rep.lhs = at_theta->second;
  rep.c_required = rep.lhs / std::pow(u1_measure, inv_p0);
  return rep;
}

HarnackReport harnack_quotient(const SolutionField& field, double f_norm) {
  check_field(field);
  if (!(f_norm >= 0.0))
    throw std::invalid_argument("forcing norm must be nonnegative");
  const double alpha = field.kernel.alpha();
  const HarnackDomains dom = harnack_domains(alpha);

  const RawMoment early = raw_moment(field, dom.minus, 1.0, 0.0, true);
  if (early.cells == 0)
    throw std::invalid_argument("cylinder resolves no grid cells");
  const Extremes late = region_extremes(field, dom.plus, 0.0, false);
  if (late.count == 0)
    throw std::invalid_argument("cylinder resolves no grid cells");

  HarnackReport rep;
  rep.alpha = alpha;
  rep.l1_minus = std::exp(early.log_integral);
  rep.inf_plus = late.lo;
  rep.f_inf = f_norm;
  const double denom = rep.inf_plus + f_norm;
  rep.quotient = denom > 0.0 ? rep.l1_minus / denom : kInf;
  return rep;
}

GrowthResult growth_check(const SolutionField& field, double sigma,
                          double eps0, double delta_required) {
  check_field(field);
  if (!(sigma > 0.0 && sigma < 1.0))
    throw std::invalid_argument("density must lie in (0,1)");
  if (!(eps0 >= 0.0))
    throw std::invalid_argument("forcing bound must be nonnegative");
  const GrowthDomains dom = growth_domains(field.kernel.alpha());
  check_domain(field, dom.full);

  GrowthResult res;
  res.forcing_small = field.forcing_sup() <= eps0 + 1e-15;

  const std::vector<std::size_t> keep = nodes_inside(field.grid, dom.early);
  const double hd = field.grid.cell();
  double hit = 0.0;
  double total = 0.0;
  for (std::size_t n = 0; n + 1 < field.times.size(); ++n) {
    const double tm = 0.5 * (field.times[n] + field.times[n + 1]);
    if (!dom.early.contains_time(tm)) continue;
    const double w = (field.times[n + 1] - field.times[n]) * hd;
    const auto& a = field.values[n];
    const auto& b = field.values[n + 1];
    for (std::size_t i : keep) {
      total += w;
      if (0.5 * (a[i] + b[i]) >= 1.0) hit += w;
    }
  }
  if (total == 0.0)
    throw std::invalid_argument("cylinder resolves no grid cells");
  res.density = hit / total;
  res.applicable = res.density >= sigma - 1e-12;
  if (!res.applicable) return res;

  const Extremes late = region_extremes(field, dom.late, 0.0, false);
  if (late.count == 0)
    throw std::invalid_argument("cylinder resolves no grid cells");
  res.delta_measured = late.lo;
  res.pass = res.forcing_small && res.delta_measured > delta_required;
  return res;
}

OscillationReport oscillation_decay(const SolutionField& field) {
  check_field(field);
  const double alpha = field.kernel.alpha();
  const double t0 = field.times.back();
  const double tol = span_tol(field);
  if (field.times.front() > t0 - 2.0 + tol ||
      field.grid.box_radius < 3.0 - 1e-12)
    throw std::invalid_argument(
        "field does not cover the unit backward cylinder");

  OscillationReport rep;
  for (std::size_t n = 0; n < field.times.size(); ++n) {
    if (field.times[n] < t0 - 2.0 - tol) continue;
    for (double v : field.values[n])
      rep.sup_norm = std::max(rep.sup_norm, std::fabs(v));
  }

  const Grid& g = field.grid;
  for (int nu = 0;; ++nu) {
    const double r = std::pow(6.0, -nu);
    if (3.0 * r < 4.0 * g.h) break;
    const Cylinder cyl = DyadicCylinder{t0, origin, r, alpha}.cylinder();

    std::vector<std::size_t> keep = nodes_inside(g, cyl);
    if (keep.size() < 8) break;
    double lo = kInf;
    double hi = -kInf;
    long slices = 0;
    for (std::size_t n = 0; n < field.times.size(); ++n) {
      if (!cyl.contains_time(field.times[n])) continue;
      ++slices;
      const auto& row = field.values[n];
      for (std::size_t i : keep) {
        lo = std::min(lo, row[i]);
        hi = std::max(hi, row[i]);
      }
    }
    if (slices == 0) break;
    rep.levels.push_back(nu);
    rep.osc.push_back(hi - lo);
  }
  if (rep.levels.size() < 3)
    throw std::invalid_argument("fewer than 3 resolvable dyadic levels");

  // log-linear fit over levels with genuine oscillation
  const double l6 = std::log(6.0);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  long npts = 0;
  for (std::size_t k = 0; k < rep.levels.size(); ++k) {
    if (!(rep.osc[k] > 0.0)) continue;
    const double x = rep.levels[k] * l6;
    const double y = std::log(rep.osc[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++npts;
  }
  if (npts < 2) {
    rep.beta_fit = kInf;
    rep.fit_intercept = 0.0;
    return rep;
  }
  const double det = npts * sxx - sx * sx;
  const double slope = (npts * sxy - sx * sy) / det;
  rep.beta_fit = -slope;
  rep.fit_intercept = (sy - slope * sx) / npts;
  return rep;
}

HolderReport holder_seminorm(const SolutionField& field,
                             const Cylinder& subcyl, double alpha,
                             double beta) {
  check_field(field);
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("order must lie in (0,2)");
  if (!(beta > 0.0))
    throw std::invalid_argument("exponent must be positive");
  const Grid& g = field.grid;

  // largest dyadic scale whose backward cylinder fits inside the domain
  // from every point of the subcylinder
  const double t_margin = subcyl.t_lo() - field.times.front();
  const double s_margin =
      g.omega_radius - (dist(subcyl.center_x(), g.omega_center) +
                        subcyl.radius());
  if (t_margin <= 0.0 || s_margin <= 0.0)
    throw std::invalid_argument(
        "subcylinder not compactly inside the field domain");
  const double eta = std::min(
      {0.5, std::pow(0.5 * t_margin, 1.0 / alpha), s_margin / 3.0});

  const std::vector<std::size_t> keep = nodes_inside(g, subcyl);
  std::vector<std::size_t> slices;
  for (std::size_t n = 0; n < field.times.size(); ++n)
    if (subcyl.contains_time(field.times[n])) slices.push_back(n);
  if (keep.empty() || slices.empty())
    throw std::invalid_argument("subcylinder resolves no grid points");

  // thin long histories; pairwise scan is quadratic in the point count
  const std::size_t stride = slices.size() > 50 ? (slices.size() + 49) / 50 : 1;
  std::vector<std::pair<double, std::size_t>> pts;  // (time, node)
  for (std::size_t k = 0; k < slices.size(); k += stride)
    for (std::size_t i : keep) pts.emplace_back(field.times[slices[k]], i);

  double sem = 0.0;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    const auto [ta, ia] = pts[a];
    const double ua = field.values[field.nearest_time(ta)][ia];
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      const auto [tb, ib] = pts[b];
      if (ia == ib && ta == tb) continue;
      const double ub = field.values[field.nearest_time(tb)][ib];
      const double den = dist(g.nodes[ia], g.nodes[ib]) +
                         std::pow(std::fabs(ta - tb), 1.0 / alpha);
      sem = std::max(sem, std::fabs(ua - ub) / std::pow(den, beta));
    }
  }

  double sup = 0.0;
  for (const auto& row : field.values)
    for (double v : row) sup = std::max(sup, std::fabs(v));

  HolderReport rep;
  rep.seminorm = sem;
  rep.eta = eta;
  rep.bound = 12.0 * sup / std::pow(eta, beta);
  rep.pass = sem <= rep.bound;
  return rep;
}

GapResult caccioppoli_check(const SolutionField& field, double r, double R,
                            double q) {
  check_field(field);
  check_ladder_radii(r, R);
  if (!(q > 1.0)) throw std::invalid_argument("exponent must exceed 1");
  const double alpha = field.kernel.alpha();
  const double shift = positivity_shift(field);
  const double e = 0.5 * (1.0 - q);

  const Cylinder inner = side_cylinder(CylinderSide::minus, r, alpha);
  const Cylinder outer = side_cylinder(CylinderSide::minus, R, alpha);
  check_domain(field, outer);

  const Grid& g = field.grid;
  const double hd = g.cell();
  const Ball br{origin, r};

  const auto transform = [&](const std::vector<double>& ua,
                             const std::vector<double>& ub,
                             std::vector<double>& v) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double m = 0.5 * (ua[i] + ub[i]) + shift;
      if (!(m > 0.0))
        throw std::invalid_argument(
            "field is not positive after the forcing shift");
      v[i] = std::pow(m, e);
    }
  };

  // slice supremum of the mass term
  double sup_term = 0.0;
  long sup_slices = 0;
  for (std::size_t n = 0; n < field.times.size(); ++n) {
    if (!inner.contains_time(field.times[n])) continue;
    ++sup_slices;
    double s = 0.0;
    const auto& row = field.values[n];
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!br.contains(g.nodes[i])) continue;
      const double m = row[i] + shift;
      if (!(m > 0.0))
        throw std::invalid_argument(
            "field is not positive after the forcing shift");
      const double v = std::pow(m, e);
      s += v * v;
    }
    sup_term = std::max(sup_term, hd * s);
  }
  if (sup_slices == 0)
    throw std::invalid_argument("time interval resolves no slices");

  // energy over the inner cylinder, pairs restricted to the working ball
  DiscreteOperator op = assemble(field.kernel, field.grid, 0.0);
  std::vector<double> v(g.size());
  double energy = 0.0;
  for (std::size_t n = 0; n + 1 < field.times.size(); ++n) {
    const double tm = 0.5 * (field.times[n] + field.times[n + 1]);
    if (!inner.contains_time(tm)) continue;
    if (field.kernel.time_dependent()) op = assemble(field.kernel, field.grid, tm);
    transform(field.values[n], field.values[n + 1], v);
    energy += (field.times[n + 1] - field.times[n]) * hd * op.form(v, v, &br);
  }

  const RawMoment l2 = raw_moment(field, outer, 1.0 - q, shift, false);
  const double theta_q = std::max(4.0, 0.5 * (6.0 * q - 5.0));
  const double shape =
      (q - 1.0) * theta_q *
      (std::pow(R - r, -alpha) +
       1.0 / (std::pow(R, alpha) - std::pow(r, alpha)));

  return ratio_result(sup_term + energy, shape * std::exp(l2.log_integral),
                      {{"sup_term", sup_term},
                       {"energy", energy},
                       {"theta_q", theta_q},
                       {"r", r},
                       {"R", R},
                       {"q", q},
                       {"shift", shift}});
}

}  // namespace nlparab
