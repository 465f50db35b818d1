#pragma once

#include "nlparab/field.hpp"
#include "nlparab/kernel.hpp"

namespace nlparab {

// a problem transported to the reference scale
struct ScaledProblem {
  Kernel kernel;
  SolutionField field;
  double forcing_scale = 1.0;  // multiplier carried into the forcing
};

// Transports (kernel, field) by u~(t, x) = u(r^alpha t + tau, r x + xi):
// the kernel density becomes r^{d+alpha} k0(r x + xi, r y + xi) (identical
// for power profiles), any coefficient is remapped in time and space, and
// the forcing picks up the factor r^alpha. The returned field lives on the
// re-indexed lattice with mesh h/r; xi must be lattice-aligned so values
// transport without interpolation. The class certificate (alpha0, lambda)
// is unchanged. r = 1, xi = 0, tau = 0 reproduces the inputs.
//
// The field must cover the scaled reference cylinder
// (tau - r^alpha, tau + r^alpha) x B_{2r}(xi) inside its interior region.
ScaledProblem scale_problem(const Kernel& kernel, const SolutionField& field,
                            double r, Point xi, double tau);

}  // namespace nlparab
