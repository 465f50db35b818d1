#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "nlparab/geometry.hpp"
#include "nlparab/grid.hpp"
#include "nlparab/kernel.hpp"

namespace nlparab {

// Discrete image of the jump operator on a grid: symmetric nonnegative pair
// weights w_ij ~ k_t(x_i, x_j) h^d from cell-averaged quadrature, a
// second-moment-matched near field (the principal value lives entirely in
// the symmetric difference form; there is no diagonal weight), and a
// per-interior-row tail coefficient absorbing the far field beyond the
// truncation box. Immutable after assembly; evaluation is thread-safe.
class DiscreteOperator {
 public:
  const Grid& grid() const { return grid_; }
  const Kernel& kernel() const { return kernel_; }
  double time() const { return t_; }

  // pair weight between distinct nodes; includes the coefficient a(t,x,y)
  double weight(int i, int j) const;

  // base weight without the coefficient (what symmetry/export tests inspect)
  double base_weight(int i, int j) const;

  // far-field mass coefficient of node i (positive on interior rows only)
  double tail(int i) const { return tail_[std::size_t(i)]; }

  // (Lu)_i = sum_j w_ij (u_j - u_i) + tail_i (u_far - u_i) on interior
  // nodes; collar entries of the result are 0. u_far is the exterior
  // datum's far-field value; required whenever some tail_i > 0.
  std::vector<double> apply(const std::vector<double>& u,
                            std::optional<double> u_far = std::nullopt) const;

  // sum over pairs i<j of 2 w_ij (u_i - u_j)(v_i - v_j); when within is
  // given, only pairs with both nodes inside the ball contribute.
  double form(const std::vector<double>& u, const std::vector<double>& v,
              const Ball* within = nullptr) const;

  // discrete (K1) functional at one node:
  // rho^{-2} sum_{|dx|<=rho} w|dx|^2 + sum_{|dx|>rho} w + tail
  double k1_functional(int node, double rho) const;

  // one line "row col value" per stored pair (i < j), base weights
  void write_triplets(std::ostream& out) const;

 private:
  friend DiscreteOperator assemble(const Kernel&, const Grid&, double);
  DiscreteOperator(Kernel k, Grid g, double t)
      : grid_(std::move(g)), kernel_(std::move(k)), t_(t) {}

  double offset_weight(long di, long dj) const;

  Grid grid_;
  Kernel kernel_;
  double t_ = 0.0;
  bool by_offset_ = true;        // translation-invariant fast path
  std::vector<double> offw_;     // offset table (see operator.cpp layout)
  std::vector<double> pairw_;    // dense upper-triangular weights (generic path)
  std::vector<double> tail_;
};

// Builds the discrete operator for the kernel at time t. Exact cell-pair
// integrals for power-law profiles, midpoint quadrature otherwise; the
// near field is matched to the kernel's second-moment matrix, which is what
// keeps the scheme stable as the order approaches 2.
DiscreteOperator assemble(const Kernel& kernel, const Grid& grid, double t = 0.0);

// free-function forms of the member operations
std::vector<double> apply_L(const DiscreteOperator& op, const std::vector<double>& u,
                            std::optional<double> u_far = std::nullopt);
double bilinear_form(const DiscreteOperator& op, const std::vector<double>& u,
                     const std::vector<double>& v, const Ball* within = nullptr);

}  // namespace nlparab
