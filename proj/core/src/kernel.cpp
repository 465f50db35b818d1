#include "nlparab/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace nlparab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// integral of s^e over (a, b); b may be infinite when e < -1, a may be 0 when
// e > -1. e == -1 falls back to the logarithm.
double power_integral(double e, double a, double b) {
  if (a == 0.0 && e <= -1.0)
    throw std::invalid_argument("near-diagonal moment diverges");
  if (std::isinf(b)) {
    if (e >= -1.0) throw std::invalid_argument("divergent tail moment");
    return -std::pow(a, e + 1.0) / (e + 1.0);
  }
  if (e == -1.0) return std::log(b / a);
  return (std::pow(b, e + 1.0) - std::pow(a, e + 1.0)) / (e + 1.0);
}

// integral of s^p * F(s) over (a, b) for the radial density of a table
// profile; exact on each piece.
double table_moment(const TableProfile& tp, int dim, double p, double a, double b) {
  double total = 0.0;
  const double r0 = tp.radii.front();
  const double rm = tp.radii.back();
  if (a < r0) {
    const double hi = std::min(b, r0);
    total += tp.near_coef * power_integral(p - dim - tp.near_alpha, a, hi);
    a = hi;
  }
  for (std::size_t i = 0; i + 1 < tp.radii.size() && a < b; ++i) {
    const double s0 = tp.radii[i], s1 = tp.radii[i + 1];
    const double lo = std::max(a, s0), hi = std::min(b, s1);
    if (lo >= hi) continue;
    const double slope = (tp.values[i + 1] - tp.values[i]) / (s1 - s0);
    const double icpt = tp.values[i] - slope * s0;
    total += slope * power_integral(p + 1.0, lo, hi) + icpt * power_integral(p, lo, hi);
  }
  if (b > rm && tp.tail_coef != 0.0) {
    const double lo = std::max(a, rm);
    total += tp.tail_coef * power_integral(p - dim - tp.tail_alpha, lo, b);
  }
  return total;
}

double table_density(const TableProfile& tp, int dim, double r) {
  if (r < tp.radii.front())
    return tp.near_coef * std::pow(r, -double(dim) - tp.near_alpha);
  if (r > tp.radii.back())
    return tp.tail_coef * std::pow(r, -double(dim) - tp.tail_alpha);
  const auto it = std::upper_bound(tp.radii.begin(), tp.radii.end(), r);
  const std::size_t i = std::min(tp.radii.size() - 2,
                                 std::size_t(std::max<std::ptrdiff_t>(0, it - tp.radii.begin() - 1)));
  const double w = (r - tp.radii[i]) / (tp.radii[i + 1] - tp.radii[i]);
  return (1.0 - w) * tp.values[i] + w * tp.values[i + 1];
}

}  // namespace

double sphere_measure(int dim) { return dim == 1 ? 2.0 : 2.0 * kPi; }

double fractional_normalization(int dim, double alpha) {
  if (alpha <= 0.0 || alpha >= 2.0)
    throw std::invalid_argument("fractional order must lie in (0,2)");
  // alpha * 2^{alpha-1} * Gamma((d+alpha)/2) / (pi^{d/2} * Gamma(1-alpha/2))
  return alpha * std::pow(2.0, alpha - 1.0) * std::tgamma(0.5 * (dim + alpha)) /
         (std::pow(kPi, 0.5 * dim) * std::tgamma(1.0 - 0.5 * alpha));
}

Kernel::Kernel(int dim, double alpha, Profile profile, double alpha0, double lambda)
    : dim_(dim), alpha_(alpha), alpha0_(alpha0), lambda_(lambda),
      profile_(std::move(profile)) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("kernel dimension must be 1 or 2");
  if (alpha0 <= 0.0 || alpha0 >= 2.0) throw std::invalid_argument("alpha0 must lie in (0,2)");
  if (!(alpha > alpha0 && alpha < 2.0))
    throw std::invalid_argument("kernel order must lie in (alpha0, 2)");
  if (lambda < std::max(1.0, 1.0 / alpha0))
    throw std::invalid_argument("lambda must be at least max(1, 1/alpha0)");
  if (const auto* tp = std::get_if<TableProfile>(&profile_)) {
    if (tp->radii.size() < 2 || tp->radii.size() != tp->values.size())
      throw std::invalid_argument("table profile needs matching radii/values, at least two");
    if (!std::is_sorted(tp->radii.begin(), tp->radii.end()) || tp->radii.front() <= 0.0)
      throw std::invalid_argument("table radii must be positive and increasing");
  }
  if (const auto* cp = std::get_if<ConeProfile>(&profile_)) {
    if (dim_ != 2) throw std::invalid_argument("cone profiles require dimension 2");
    if (cp->aperture <= 0.0 || cp->aperture >= 1.0)
      throw std::invalid_argument("cone aperture must lie in (0,1)");
  }
}

double Kernel::density(Point x, Point y) const {
  const double r = dist(x, y);
  if (r == 0.0) throw std::invalid_argument("kernel density is singular on the diagonal");
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PowerProfile>) {
          return p.coef * std::pow(r, -double(dim_) - alpha_);
        } else if constexpr (std::is_same_v<T, ConeProfile>) {
          const Point u = (1.0 / r) * (x - y);
          if (!direction_allowed(u)) return 0.0;
          return p.coef * std::pow(r, -double(dim_) - alpha_);
        } else if constexpr (std::is_same_v<T, TableProfile>) {
          return table_density(p, dim_, r);
        } else {
          return p.k0(x, y);
        }
      },
      profile_);
}

double Kernel::angular_fraction() const {
  if (const auto* cp = std::get_if<ConeProfile>(&profile_)) {
    // each cone meets the circle in an arc of half-width 2*asin(aperture/2)
    return 4.0 * std::asin(0.5 * cp->aperture) / kPi;
  }
  return 1.0;
}

bool Kernel::direction_allowed(Point u) const {
  if (const auto* cp = std::get_if<ConeProfile>(&profile_)) {
    return dist(u, cp->axis) < cp->aperture || norm(u + cp->axis) < cp->aperture;
  }
  return true;
}

Kernel Kernel::with_coefficient(Coefficient a, bool time_dependent) const {
  Kernel k = *this;
  k.coeff_ = std::move(a);
  k.time_dependent_ = time_dependent;
  return k;
}

Kernel Kernel::with_class(double alpha0, double lambda) const {
  return Kernel(dim_, alpha_, profile_, alpha0, lambda).with_coefficient(coeff_, time_dependent_);
}

Kernel make_fractional(int dim, double alpha, Normalization normalization) {
  const double coef = normalization == Normalization::exact
                          ? fractional_normalization(dim, alpha)
                          : 2.0 - alpha;
  return Kernel(dim, alpha, PowerProfile{coef});
}

Kernel make_sequence_kernel(int n, int dim) {
  if (n < 0) throw std::invalid_argument("sequence index must be nonnegative");
  const double alpha = 2.0 - 1.0 / (n + 1.0);
  // one certificate for the whole sequence: orders fill [1, 2)
  const double lambda = dim == 1 ? 4.0 : 13.0;
  return Kernel(dim, alpha, PowerProfile{2.0 - alpha}, 0.9, lambda);
}

Kernel make_cone_kernel(double alpha, Point axis, double aperture, int dim) {
  if (aperture <= 0.0 || aperture >= 1.0)
    throw std::invalid_argument("cone aperture must lie in (0,1)");
  if (dim == 1) return make_fractional(1, alpha, Normalization::two_minus_alpha);
  const double n = norm(axis);
  if (n == 0.0) throw std::invalid_argument("cone axis must be a nonzero vector");
  return Kernel(2, alpha, ConeProfile{2.0 - alpha, (1.0 / n) * axis, aperture});
}

Kernel make_table_kernel(int dim, double alpha, TableProfile profile) {
  return Kernel(dim, alpha, std::move(profile));
}

double radial_density(const Kernel& k, double r) {
  if (r <= 0.0) throw std::invalid_argument("radial density needs a positive radius");
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PowerProfile>)
          return p.coef * std::pow(r, -double(k.dim()) - k.alpha());
        else if constexpr (std::is_same_v<T, ConeProfile>)
          return p.coef * std::pow(r, -double(k.dim()) - k.alpha());
        else if constexpr (std::is_same_v<T, TableProfile>)
          return table_density(p, k.dim(), r);
        else
          throw std::invalid_argument("radial density undefined for generic profiles");
      },
      k.profile());
}

// moment of order p of the radial density over (a, b), without the sphere and
// angular-fraction factors
static double radial_moment(const Kernel& k, double p, double a, double b) {
  return std::visit(
      [&](const auto& prof) -> double {
        using T = std::decay_t<decltype(prof)>;
        if constexpr (std::is_same_v<T, PowerProfile>)
          return prof.coef * power_integral(p - k.dim() - k.alpha(), a, b);
        else if constexpr (std::is_same_v<T, ConeProfile>)
          return prof.coef * power_integral(p - k.dim() - k.alpha(), a, b);
        else if constexpr (std::is_same_v<T, TableProfile>)
          return table_moment(prof, k.dim(), p, a, b);
        else
          throw std::invalid_argument("closed-form moments undefined for generic profiles");
      },
      k.profile());
}

double radial_mass(const Kernel& k, double r1, double r2) {
  return sphere_measure(k.dim()) * k.angular_fraction() *
         radial_moment(k, k.dim() - 1.0, r1, r2);
}

double radial_second_moment(const Kernel& k, double rho) {
  return sphere_measure(k.dim()) * k.angular_fraction() *
         radial_moment(k, k.dim() + 1.0, 0.0, rho);
}

double radial_weighted_mass(const Kernel& k, double w, double r1, double r2) {
  return sphere_measure(k.dim()) * k.angular_fraction() *
         radial_moment(k, k.dim() - 1.0 + w, r1, r2);
}

}  // namespace nlparab
