#include "nlparab/membership.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nlparab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// composite Simpson with n (even) subintervals
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

// integral over unit directions u of 1_{|x+su| > 3} 1_{u allowed} |x+su|^w.
// Exact two-point sum in one dimension, trapezoid in two.
double angular_factor(const Kernel& k, Point x, double s, double w, int nang) {
  if (k.dim() == 1) {
    double total = 0.0;
    for (double sgn : {1.0, -1.0}) {
      const double y = x[0] + sgn * s;
      if (std::abs(y) > 3.0 && k.direction_allowed(Point{sgn, 0.0}))
        total += std::pow(std::abs(y), w);
    }
    return total;
  }
  const double dth = 2.0 * 3.14159265358979323846 / nang;
  double total = 0.0;
  for (int i = 0; i < nang; ++i) {
    const double th = (i + 0.5) * dth;
    const Point u{std::cos(th), std::sin(th)};
    const Point y = x + s * u;
    if (norm(y) > 3.0 && k.direction_allowed(u)) total += std::pow(norm(y), w);
  }
  return total * dth;
}

// closed-form bound for the translation-invariant tail beyond radius S:
// int_{|z|>S} |x+z|^w F(|z|) dz with |x| <= 2, using |x+z| <= |z| (1 + 2/S).
double analytic_tail_ti(const Kernel& k, double w, double s_max) {
  const double exact = radial_weighted_mass(k, w, s_max, kInf);
  return exact * std::pow(1.0 + 2.0 / s_max, w);
}

// graded lattice sum of k0(x, y) * wfun(y) over inner < |y - region_center|
// <= S_max, for kernels without a radial profile. Returns infinity when the
// dyadic band sums fail to decay.
double banded_lattice_sum(const Kernel& k, Point x, Point region_center,
                          double inner, double w_abs_y,
                          const QuadratureSpec& q) {
  const int dim = k.dim();
  double total = 0.0;
  double prev_band = -1.0;
  double r_lo = inner;
  double r_hi = std::max(q.first_shell, 2.0 * inner);
  for (int band = 0; band <= q.doublings; ++band) {
    const double h = std::max(q.spacing, r_lo / 64.0);
    const long n = long(std::ceil(r_hi / h));
    double band_sum = 0.0;
    const double cell = std::pow(h, dim);
    if (dim == 1) {
      for (long i = -n; i < n; ++i) {
        const Point y{region_center[0] + (i + 0.5) * h, 0.0};
        const double r = std::abs(y[0] - region_center[0]);
        if (r <= r_lo || r > r_hi) continue;
        band_sum += k.density(x, y) * std::pow(norm(y), w_abs_y) * cell;
      }
    } else {
      for (long i = -n; i < n; ++i)
        for (long j = -n; j < n; ++j) {
          const Point y{region_center[0] + (i + 0.5) * h,
                        region_center[1] + (j + 0.5) * h};
          const double r = dist(y, region_center);
          if (r <= r_lo || r > r_hi) continue;
          band_sum += k.density(x, y) * std::pow(norm(y), w_abs_y) * cell;
        }
    }
    if (!std::isfinite(band_sum))
      throw std::runtime_error("quadrature failure: non-finite integrand sum");
    total += band_sum;
    if (band > 0 && prev_band > 1e-14 && band_sum >= 0.98 * prev_band)
      return kInf;  // band sums not decaying: divergent tail
    prev_band = band_sum;
    r_lo = r_hi;
    r_hi *= 2.0;
  }
  return total;
}

}  // namespace

MembershipReport finalize_report(Condition c, double lhs, double rhs, Point probe,
                                 std::string note) {
  MembershipReport r;
  r.condition = c;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  r.pass = std::isfinite(lhs) && r.margin >= -1e-8 * scale;
  r.probe = probe;
  r.note = std::move(note);
  return r;
}

MembershipReport check_k1(const Kernel& k, Point x0, double rho,
                          const QuadratureSpec& quad) {
  if (!(rho > 0.0 && rho < 2.0))
    throw std::invalid_argument("check_k1 radius must lie in (0,2)");
  const double rhs = k.lambda() * std::pow(rho, -k.alpha());
  double lhs;
  if (k.translation_invariant()) {
    lhs = radial_second_moment(k, rho) / (rho * rho) + radial_mass(k, rho, kInf);
  } else {
    // near part: midpoint lattice over |z| <= rho, half-offset so the
    // singular point is never sampled
    const double h = quad.spacing;
    const long n = long(std::ceil(rho / h));
    const int dim = k.dim();
    double near = 0.0;
    const double cell = std::pow(h, dim);
    if (dim == 1) {
      for (long i = -n; i < n; ++i) {
        const double z = (i + 0.5) * h;
        if (std::abs(z) > rho) continue;
        near += z * z * k.density(x0, Point{x0[0] + z, 0.0}) * cell;
      }
    } else {
      for (long i = -n; i < n; ++i)
        for (long j = -n; j < n; ++j) {
          const Point z{(i + 0.5) * h, (j + 0.5) * h};
          if (norm(z) > rho) continue;
          near += dot(z, z) * k.density(x0, x0 + z) * cell;
        }
    }
    if (!std::isfinite(near))
      throw std::runtime_error("quadrature failure: non-finite integrand sum");
    double outer = banded_lattice_sum(k, x0, x0, rho, 0.0, quad);
    const auto& gp = std::get<GenericProfile>(k.profile());
    if (std::isfinite(outer) && gp.tail_coef > 0.0) {
      const double s_max = std::max(quad.first_shell, 2.0 * rho) *
                           std::pow(2.0, quad.doublings);
      if (gp.tail_alpha <= 0.0)
        outer = kInf;
      else
        outer += gp.tail_coef * sphere_measure(dim) *
                 std::pow(s_max, -gp.tail_alpha) / gp.tail_alpha;
    }
    lhs = near / (rho * rho) + outer;
  }
  return finalize_report(Condition::k1, lhs, rhs, x0);
}

MembershipReport check_k2(const Kernel& k, Point x0, double rho,
                          const std::vector<GridFunction>& probes) {
  if (rho <= 0.0) throw std::invalid_argument("check_k2 radius must be positive");
  const double ref_coef = 2.0 - k.alpha();
  const double expo = -double(k.dim()) - k.alpha();
  double worst = 0.0;
  int worst_index = -1;
  int skipped = 0;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const GridFunction& v = probes[p];
    if (v.h <= 0.0) throw std::invalid_argument("probe spacing must be positive");
    if (v.nodes.size() != v.values.size())
      throw std::invalid_argument("probe nodes/values must have equal length");
    std::vector<std::size_t> in;
    for (std::size_t i = 0; i < v.nodes.size(); ++i)
      if (dist(v.nodes[i], x0) < rho) in.push_back(i);
    double form_k = 0.0, form_ref = 0.0;
    for (std::size_t a = 0; a < in.size(); ++a)
      for (std::size_t b = a + 1; b < in.size(); ++b) {
        const std::size_t i = in[a], j = in[b];
        const double d2 = (v.values[i] - v.values[j]) * (v.values[i] - v.values[j]);
        if (d2 == 0.0) continue;
        const double r = dist(v.nodes[i], v.nodes[j]);
        form_k += d2 * k.density(v.nodes[i], v.nodes[j]);
        form_ref += d2 * (ref_coef * std::pow(r, expo));
      }
    if (form_ref == 0.0) {
      ++skipped;
      continue;
    }
    const double ratio = form_k / form_ref;
    const double two_sided = std::max(ratio, ratio > 0.0 ? 1.0 / ratio : kInf);
    if (two_sided > worst) {
      worst = two_sided;
      worst_index = int(p);
    }
  }
  std::string note;
  if (skipped > 0)
    note = std::to_string(skipped) + " zero-energy probe(s) skipped";
  if (worst_index < 0) {
    note += note.empty() ? "no usable probes; check is vacuous"
                         : "; no usable probes; check is vacuous";
    return finalize_report(Condition::k2, 1.0, k.lambda(), x0, note);
  }
  MembershipReport r = finalize_report(Condition::k2, worst, k.lambda(), x0, note);
  r.probe = probes[std::size_t(worst_index)].nodes.empty()
                ? x0
                : probes[std::size_t(worst_index)].nodes.front();
  return r;
}

double tail_weight_moment(const Kernel& k, Point x, double w,
                          const QuadratureSpec& quad) {
  if (!k.translation_invariant()) {
    double total = banded_lattice_sum(k, x, origin, 3.0, w, quad);
    if (!std::isfinite(total)) return kInf;
    const auto& gp = std::get<GenericProfile>(k.profile());
    if (gp.tail_coef > 0.0) {
      const double s_max = std::max(quad.first_shell, 6.0) *
                           std::pow(2.0, quad.doublings);
      if (gp.tail_alpha <= w) return kInf;
      total += gp.tail_coef * std::pow(1.0 - 2.0 / s_max, -double(k.dim()) - gp.tail_alpha) *
               sphere_measure(k.dim()) * std::pow(s_max, w - gp.tail_alpha) /
               (gp.tail_alpha - w);
    }
    return total;
  }
  if (norm(x) == 0.0) {
    // radial closed form, exact for power profiles
    try {
      return radial_weighted_mass(k, w, 3.0, kInf);
    } catch (const std::invalid_argument&) {
      return kInf;
    }
  }
  // radial shells around x with the exact angular restriction
  const double s0 = std::max(3.0 - norm(x), 1e-3);
  const double s_max = quad.first_shell * std::pow(2.0, quad.doublings);
  const int nang = 256;
  auto g = [&](double s) {
    return radial_density(k, s) * std::pow(s, k.dim() - 1) *
           angular_factor(k, x, s, w, nang);
  };
  double total = 0.0;
  double band_edge = quad.first_shell;
  while (band_edge <= s0) band_edge *= 2.0;
  double band_sum = 0.0, prev_band = -1.0;
  double lo = s0;
  bool diverged = false;
  while (lo < s_max) {
    // pieces stop exactly at each octave edge: the decay test below compares
    // band sums, so compared bands must span equal ranges
    const double hi = std::min({lo * 1.25, band_edge, s_max});
    const double piece = simpson(g, lo, hi, 8);
    if (!std::isfinite(piece))
      throw std::runtime_error("quadrature failure: non-finite integrand sum");
    total += piece;
    band_sum += piece;
    if (hi >= band_edge || hi >= s_max) {
      if (prev_band > 1e-14 && band_sum >= 0.98 * prev_band) diverged = true;
      prev_band = band_sum;
      band_sum = 0.0;
      band_edge *= 2.0;
    }
    lo = hi;
  }
  if (diverged) return kInf;
  try {
    total += analytic_tail_ti(k, w, s_max);
  } catch (const std::invalid_argument&) {
    return kInf;
  }
  return total;
}

MembershipReport check_k3(const Kernel& k, const QuadratureSpec& quad) {
  const double w = 1.0 / k.lambda();
  double worst = -kInf;
  Point worst_x = origin;
  const double step = quad.x_step;
  const long n = long(std::floor(2.0 / step));
  const int dim = k.dim();
  for (long i = -n; i <= n; ++i) {
    const long jmax = dim == 1 ? 0 : n;
    for (long j = -(dim == 1 ? 0 : n); j <= jmax; ++j) {
      const Point x{i * step, dim == 1 ? 0.0 : j * step};
      if (norm(x) > 2.0) continue;
      const double v = tail_weight_moment(k, x, w, quad);
      if (v > worst) {
        worst = v;
        worst_x = x;
      }
    }
  }
  std::string note;
  if (!std::isfinite(worst))
    note = "tail moment not converging over expanding shells";
  return finalize_report(Condition::k3, worst, k.lambda(), worst_x, note);
}

}  // namespace nlparab
