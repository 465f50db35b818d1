#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "nlparab/point.hpp"

namespace nlparab {

// Uniform 0-centered lattice x = k*h covering the ball of radius box_radius,
// split into interior (the working ball, strict membership) and collar (the
// truncation buffer carrying exterior data). Node order is lexicographic in
// the lattice index, so construction is deterministic.
struct Grid {
  int dim = 1;
  double h = 0.0;
  double omega_radius = 0.0;
  Point omega_center = origin;
  double box_radius = 0.0;

  std::vector<Point> nodes;
  std::vector<std::array<long, 2>> index;  // lattice index per node; [1] is 0 when dim == 1
  std::vector<int> interior;               // node ids with |x - omega_center| < omega_radius
  std::vector<int> collar;                 // the remaining node ids
  std::vector<char> inside;                // per-node interior flag

  long imax = 0;                 // lattice bound: |k| <= imax per axis
  std::vector<int> lookup;       // dense lattice-index -> node id map, -1 for holes

  std::size_t size() const { return nodes.size(); }
  double cell() const;  // h^dim

  // node id at lattice index (i, j), -1 when no such node
  int at(long i, long j = 0) const;
};

// Builds the lattice. collar_radius is the truncation box radius and must be
// at least 3 * omega_radius so tail checks stay resolvable. Throws when the
// node count would exceed node_cap, naming a workable mesh width.
Grid build_grid(double omega_radius, double collar_radius, double h, int dim,
                long node_cap = 2000000, Point omega_center = origin);

}  // namespace nlparab
