#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "nlparab/point.hpp"

namespace nlparab {

/// Normalization of the jump density coef * |z|^{-d-alpha}.
///   exact           : generator equals the negative fractional laplacian
///   two_minus_alpha : coef = 2 - alpha (the robustness-friendly choice)
enum class Normalization { exact, two_minus_alpha };

/// Constant A(d, alpha) such that the principal-value integral with density
/// A |z|^{-d-alpha} is the negative fractional laplacian of order alpha/2.
/// Comparable to alpha * (2 - alpha) with dimension-dependent factors.
double fractional_normalization(int dim, double alpha);

/// Isotropic power density coef * |z|^{-d-alpha}.
struct PowerProfile {
  double coef = 1.0;
};

/// Power density restricted to a symmetric double cone of directions:
/// directions u with |u - axis| < aperture or |u + axis| < aperture.
/// Two spatial dimensions only.
struct ConeProfile {
  double coef = 1.0;
  Point axis{1.0, 0.0};
  double aperture = 0.5;
};

/// Tabulated radial density: power law below radii.front(), linear
/// interpolation on the table, power law above radii.back(). The explicit
/// power tails keep all far-field integrals analytic.
struct TableProfile {
  double near_coef = 1.0;
  double near_alpha = 1.0;  ///< density near_coef * r^{-d-near_alpha} for r < radii.front()
  std::vector<double> radii;
  std::vector<double> values;
  double tail_coef = 1.0;
  double tail_alpha = 1.0;  ///< density tail_coef * r^{-d-tail_alpha} for r > radii.back()
};

/// Arbitrary symmetric density with a mandatory analytic tail bound
/// k0(x, y) <= tail_coef * |x-y|^{-d-tail_alpha} used beyond truncation boxes.
struct GenericProfile {
  std::function<double(Point, Point)> k0;
  double tail_coef = 1.0;
  double tail_alpha = 1.0;
};

using Profile = std::variant<PowerProfile, ConeProfile, TableProfile, GenericProfile>;

/// Bounded measurable time-space coefficient a(t, x, y), symmetric in (x, y)
/// with values in [1/2, 1]. A default-constructed Coefficient means a == 1.
using Coefficient = std::function<double(double, Point, Point)>;

/// Time-dependent jump kernel k_t(x, y) = a(t, x, y) * k0(x, y) together with
/// the class parameters (alpha0, lambda) it is certified against.
/// Immutable value type; all evaluation is const and thread-safe.
class Kernel {
 public:
  Kernel(int dim, double alpha, Profile profile, double alpha0 = 0.4,
         double lambda = 8.0);

  int dim() const { return dim_; }
  double alpha() const { return alpha_; }
  double alpha0() const { return alpha0_; }
  double lambda() const { return lambda_; }
  const Profile& profile() const { return profile_; }

  /// Spatial density k0(x, y). Throws std::invalid_argument at x == y where
  /// the density is singular.
  double density(Point x, Point y) const;

  /// Coefficient a(t, x, y); 1 when no coefficient was attached.
  double coeff(double t, Point x, Point y) const {
    return coeff_ ? coeff_(t, x, y) : 1.0;
  }

  /// Full kernel k_t(x, y) = a(t, x, y) * k0(x, y).
  double eval(double t, Point x, Point y) const {
    return coeff(t, x, y) * density(x, y);
  }

  bool has_coefficient() const { return static_cast<bool>(coeff_); }
  bool time_dependent() const { return time_dependent_; }

  /// True when k0(x, y) depends on x - y only (all built-in profiles).
  bool translation_invariant() const {
    return !std::holds_alternative<GenericProfile>(profile_);
  }

  /// Fraction of the unit sphere carrying the density (1 unless a cone).
  double angular_fraction() const;

  /// True if the direction u (unit vector) carries density.
  bool direction_allowed(Point u) const;

  /// Returns a copy with the coefficient attached. time_dependent marks
  /// whether a depends on t, so assembled weights can be cached.
  Kernel with_coefficient(Coefficient a, bool time_dependent) const;

  /// Returns a copy certified against different class parameters.
  Kernel with_class(double alpha0, double lambda) const;

 private:
  int dim_;
  double alpha_;
  double alpha0_;
  double lambda_;
  Profile profile_;
  Coefficient coeff_;
  bool time_dependent_ = false;
};

/// Isotropic kernel of order alpha in dimension dim.
Kernel make_fractional(int dim, double alpha,
                       Normalization normalization = Normalization::exact);

/// Member n of the order sequence alpha_n = 2 - 1/(n+1), with the
/// (2 - alpha_n) normalization. The whole sequence shares one certificate.
Kernel make_sequence_kernel(int n, int dim = 1);

/// Cone-restricted kernel (two dimensions). In one dimension the angular
/// restriction is void and the full kernel is returned.
Kernel make_cone_kernel(double alpha, Point axis, double aperture, int dim = 2);

/// Kernel from a tabulated radial profile.
Kernel make_table_kernel(int dim, double alpha, TableProfile profile);

/// Radial density value F(r) with k0 = F(|x-y|) on allowed directions.
/// Translation-invariant profiles only.
double radial_density(const Kernel& k, double r);

/// Mass integral of k0 over the annulus r1 < |z| < r2 (r2 may be infinity).
/// Closed form for power and table profiles.
double radial_mass(const Kernel& k, double r1, double r2);

/// Second moment integral of |z|^2 k0 over the ball |z| <= rho.
double radial_second_moment(const Kernel& k, double rho);

/// Weighted mass integral of |z|^w k0 over r1 < |z| < r2 (r2 may be
/// infinity). Throws when the tail moment diverges.
double radial_weighted_mass(const Kernel& k, double w, double r1, double r2);

/// Surface measure of the unit sphere: 2 in one dimension, 2*pi in two.
double sphere_measure(int dim);

}  // namespace nlparab
