#include "nlparab/grid.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace nlparab {

double Grid::cell() const { return dim == 1 ? h : h * h; }

int Grid::at(long i, long j) const {
  if (std::labs(i) > imax || std::labs(j) > imax) return -1;
  const long w = 2 * imax + 1;
  const long flat = dim == 1 ? i + imax : (i + imax) * w + (j + imax);
  return lookup[std::size_t(flat)];
}

Grid build_grid(double omega_radius, double collar_radius, double h, int dim,
                long node_cap, Point omega_center) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("grid dimension must be 1 or 2");
  if (h <= 0.0) throw std::invalid_argument("mesh width must be positive");
  if (omega_radius <= 0.0) throw std::invalid_argument("omega radius must be positive");
  if (collar_radius < 3.0 * omega_radius)
    throw std::invalid_argument("collar radius must be at least 3x the omega radius");
  if (norm(omega_center) + omega_radius > collar_radius)
    throw std::invalid_argument("omega ball must lie inside the truncation box");

  const long imax = long(std::floor(collar_radius / h + 1e-9 * (1.0 + collar_radius / h)));
  const long per_axis = 2 * imax + 1;
  const long bound = dim == 1 ? per_axis : per_axis * per_axis;
  if (bound > node_cap) {
    const double h_fit =
        dim == 1 ? 2.0 * collar_radius / double(node_cap - 1)
                 : 2.0 * collar_radius / (std::sqrt(double(node_cap)) - 1.0);
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "node budget exceeded (%ld nodes > cap %ld); use h >= %.3g",
                  bound, node_cap, h_fit * 1.01);
    throw std::invalid_argument(msg);
  }

  Grid g;
  g.dim = dim;
  g.h = h;
  g.omega_radius = omega_radius;
  g.omega_center = omega_center;
  g.box_radius = collar_radius;
  g.imax = imax;
  g.lookup.assign(std::size_t(bound), -1);

  const double r_in = collar_radius * (1.0 + 1e-12) + 1e-12;
  for (long i = -imax; i <= imax; ++i) {
    if (dim == 1) {
      const Point x{i * h, 0.0};
      const int id = int(g.nodes.size());
      g.nodes.push_back(x);
      g.index.push_back({i, 0});
      g.lookup[std::size_t(i + imax)] = id;
    } else {
      for (long j = -imax; j <= imax; ++j) {
        const Point x{i * h, j * h};
        if (norm(x) > r_in) continue;
        const int id = int(g.nodes.size());
        g.nodes.push_back(x);
        g.index.push_back({i, j});
        g.lookup[std::size_t((i + imax) * per_axis + (j + imax))] = id;
      }
    }
  }

  g.inside.resize(g.nodes.size());
  for (std::size_t n = 0; n < g.nodes.size(); ++n) {
    const bool in = dist(g.nodes[n], omega_center) < omega_radius;
    g.inside[n] = in ? 1 : 0;
    (in ? g.interior : g.collar).push_back(int(n));
  }
  return g;
}

}  // namespace nlparab
