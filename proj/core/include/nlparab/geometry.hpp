#pragma once

#include <cmath>
#include <stdexcept>

#include "nlparab/point.hpp"

namespace nlparab {

/// Open ball; membership is strict, boundary points count as exterior.
struct Ball {
  Point center = origin;
  double radius = 0.0;
  bool contains(Point x) const { return dist(x, center) < radius; }
};

/// Time orientation of a space-time cylinder relative to its center time.
///   centered : (t0 - r^a, t0 + r^a)
///   plus     : (t0, t0 + r^a)          forward-in-time cylinder
///   minus    : (t0 - r^a, t0)          backward-in-time cylinder
///   box      : explicit time bounds (used for dyadic and growth domains
///              whose time extent is not r^a)
enum class Orientation { centered, plus, minus, box };

/// Open space-time cylinder I x B_r(x0). All membership tests are strict:
/// boundary points count as exterior.
class Cylinder {
 public:
  Cylinder(double center_t, Point center_x, double radius, double alpha,
           Orientation o)
      : center_t_(center_t),
        center_x_(center_x),
        radius_(radius),
        alpha_(alpha),
        orientation_(o) {
    if (radius <= 0) throw std::invalid_argument("cylinder radius must be positive");
    if (alpha <= 0 || alpha >= 2) throw std::invalid_argument("cylinder alpha must lie in (0,2)");
    const double ra = std::pow(radius, alpha);
    switch (o) {
      case Orientation::centered: t_lo_ = center_t - ra; t_hi_ = center_t + ra; break;
      case Orientation::plus:     t_lo_ = center_t;      t_hi_ = center_t + ra; break;
      case Orientation::minus:    t_lo_ = center_t - ra; t_hi_ = center_t;      break;
      case Orientation::box:      throw std::invalid_argument("use Cylinder::box for explicit time bounds");
    }
  }

  /// Cylinder with explicit open time interval (t_lo, t_hi).
  static Cylinder box(double t_lo, double t_hi, Point center_x, double radius,
                      double alpha) {
    if (t_hi <= t_lo) throw std::invalid_argument("cylinder time interval is empty");
    Cylinder c(0.5 * (t_lo + t_hi), center_x, radius, alpha, Orientation::centered);
    c.t_lo_ = t_lo;
    c.t_hi_ = t_hi;
    c.orientation_ = Orientation::box;
    return c;
  }

  double center_t() const { return center_t_; }
  Point center_x() const { return center_x_; }
  double radius() const { return radius_; }
  double alpha() const { return alpha_; }
  Orientation orientation() const { return orientation_; }
  double t_lo() const { return t_lo_; }
  double t_hi() const { return t_hi_; }

  bool contains_time(double t) const { return t > t_lo_ && t < t_hi_; }
  bool contains_space(Point x) const { return dist(x, center_x_) < radius_; }
  bool contains(double t, Point x) const {
    return contains_time(t) && contains_space(x);
  }

  /// Lebesgue measure |I| * |B_r| (d = 1 or 2).
  double measure(int dim) const {
    const double ball = dim == 1 ? 2.0 * radius_ : M_PI * radius_ * radius_;
    return (t_hi_ - t_lo_) * ball;
  }

 private:
  double center_t_;
  Point center_x_;
  double radius_;
  double alpha_;
  Orientation orientation_;
  double t_lo_ = 0, t_hi_ = 0;
};

/// Dyadic cylinder D(r) anchored at (t0, x0): (t0 - 2 r^a, t0) x B_{3r}(x0).
/// Level nu corresponds to r = 6^{-nu}.
struct DyadicCylinder {
  double t0 = 0;
  Point x0 = origin;
  double r = 1;
  double alpha = 1;

  static DyadicCylinder at_level(int level, double alpha, double t0 = 0,
                                 Point x0 = origin) {
    if (level < 0) throw std::invalid_argument("dyadic level must be nonnegative");
    return {t0, x0, std::pow(6.0, -level), alpha};
  }

  Cylinder cylinder() const {
    return Cylinder::box(t0 - 2.0 * std::pow(r, alpha), t0, x0, 3.0 * r, alpha);
  }
  bool contains(double t, Point x) const { return cylinder().contains(t, x); }
};

/// Backward dyadic distance from the origin event:
///   max(|x|/3, (-t)^{1/a}/2) for t in (-2, 0], +infinity otherwise.
double rho_hat(double t, Point x, double alpha);

struct HarnackDomains {
  Cylinder plus;   ///< (1 - (1/2)^a, 1) x B_{1/2}, where the infimum is taken
  Cylinder minus;  ///< (-1, -1 + (1/2)^a) x B_{1/2}, where the L1 norm is taken
};

/// Domains of the Harnack comparison, anchored to the reference cylinder
/// (-1, 1) x B_1.
HarnackDomains harnack_domains(double alpha);

struct GrowthDomains {
  Cylinder early;  ///< (-2, -2 + (1/2)^a) x B_{1/2}: where mass is assumed
  Cylinder late;   ///< (-(1/2)^a, 0) x B_{1/2}: where positivity is concluded
  Cylinder full;   ///< (-2, 0) x B_2: where the equation holds
};

GrowthDomains growth_domains(double alpha);

}  // namespace nlparab
