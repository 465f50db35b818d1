#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "nlparab/grid.hpp"
#include "nlparab/kernel.hpp"

namespace nlparab {

// analytic space-time map, evaluated at (t, x)
using SpaceTimeFn = std::function<double(double, Point)>;

// boundary description outside the interior region: nodewise values in the
// collar plus a single far-field value for the mass beyond the box
struct ExteriorDatum {
  SpaceTimeFn at;                      // collar nodes; null means zero
  std::function<double(double)> far;   // beyond the collar; null means zero

  double node(double t, Point x) const { return at ? at(t, x) : 0.0; }
  double beyond(double t) const { return far ? far(t) : 0.0; }
};

// time-indexed grid function together with everything needed to re-derive
// its discrete dynamics: kernel, grid, exterior datum, forcing, scheme meta
struct SolutionField {
  std::vector<double> times;
  std::vector<std::vector<double>> values;  // values[n][node], grid layout
  ExteriorDatum exterior;
  SpaceTimeFn forcing;                      // null means zero
  Kernel kernel = make_fractional(1, 1.0);  // placeholder until populated
  Grid grid;
  double dt = 0.0;
  double theta = 1.0;

  std::size_t steps() const { return times.size(); }

  const std::vector<double>& slice(std::size_t n) const { return values[n]; }

  // index of the stored time nearest to t
  std::size_t nearest_time(double t) const;

  // sup of |forcing| over all stored times and nodes (0 if no forcing)
  double forcing_sup() const;
};

}  // namespace nlparab
