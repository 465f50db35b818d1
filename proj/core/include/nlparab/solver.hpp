#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nlparab/field.hpp"
#include "nlparab/grid.hpp"
#include "nlparab/kernel.hpp"

namespace nlparab {

// theta-scheme time stepping for du/dt - Lu = f on the interior, exterior
// datum re-imposed on the collar every step.  theta in [1/2, 1]; dt omitted
// means h^min(alpha,1).  The span is divided into round(span/dt) equal steps.
SolutionField solve(const Kernel& kernel, const Grid& grid, SpaceTimeFn f,
                    const std::vector<double>& initial,
                    ExteriorDatum exterior, std::pair<double, double> t_span,
                    std::optional<double> dt = std::nullopt,
                    double theta = 1.0);

// time-integrated weak-form residual of `field` against the test field `phi`
// over [t1, t2]:
//   int phi u |_{t1}^{t2} - int int u dphi/dt + int E_t(u, phi)
//   - int int f phi
// phi must vanish outside the interior; its values are aligned with
// field.times.  A discrete solution returns round-off; >= -tol against
// nonnegative phi certifies a discrete supersolution.  forcing_override
// replaces the field's own forcing in the last term.
double residual_weak(const SolutionField& field,
                     const std::vector<std::vector<double>>& phi, double t1,
                     double t2,
                     const SpaceTimeFn& forcing_override = nullptr);

// Steklov average: (1/window) int_t^{t+window} u, trapezoid in time, with
// slices at t >= t_N - window set to zero
SolutionField steklov(const SolutionField& field, double window);

// space-time L^p norm over slices with t in [t1, t2): rectangle weight dt
// per slice, cell weight h^d per node, interior and collar alike.
// p = infinity gives the max over the same slices.
double field_lp_norm(const SolutionField& field, double p, double t1,
                     double t2);

}  // namespace nlparab
