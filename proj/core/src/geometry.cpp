#include "nlparab/geometry.hpp"

#include <limits>

namespace nlparab {

double rho_hat(double t, Point x, double alpha) {
  if (alpha <= 0 || alpha >= 2) throw std::invalid_argument("rho_hat: alpha must lie in (0,2)");
  if (!(t > -2.0 && t <= 0.0)) return std::numeric_limits<double>::infinity();
  return std::max(norm(x) / 3.0, std::pow(-t, 1.0 / alpha) / 2.0);
}

HarnackDomains harnack_domains(double alpha) {
  // plus: backward cylinder ending at t = 1; minus: forward cylinder starting
  // at t = -1. Both have spatial radius 1/2 and time extent (1/2)^alpha.
  return {Cylinder(1.0, origin, 0.5, alpha, Orientation::minus),
          Cylinder(-1.0, origin, 0.5, alpha, Orientation::plus)};
}

GrowthDomains growth_domains(double alpha) {
  return {Cylinder(-2.0, origin, 0.5, alpha, Orientation::plus),
          Cylinder(0.0, origin, 0.5, alpha, Orientation::minus),
          Cylinder::box(-2.0, 0.0, origin, 2.0, alpha)};
}

}  // namespace nlparab
