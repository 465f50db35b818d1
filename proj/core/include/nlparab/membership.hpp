#pragma once

#include <string>
#include <vector>

#include "nlparab/kernel.hpp"

namespace nlparab {

enum class Condition { k1, k2, k3 };

// outcome of a single kernel-class check. lhs is the measured quantity, rhs
// the admissible bound; margin = rhs - lhs. pass allows a relative slack of
// 1e-8 so quadrature noise cannot flip a genuine pass.
struct MembershipReport {
  Condition condition;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = false;
  Point probe = origin;  // location (or probe centre) realizing the worst case
  std::string note;
};

MembershipReport finalize_report(Condition c, double lhs, double rhs, Point probe,
                                 std::string note = {});

// numeric fallback parameters; closed forms are used whenever the profile
// admits them and ignore these.
struct QuadratureSpec {
  double spacing = 0.02;      // lattice step for near-field sums
  double first_shell = 8.0;   // outer radius of the first tail shell
  int doublings = 6;          // shell doublings used to detect divergence
  double x_step = 0.25;       // grid step for suprema over x
};

// sampled function on a uniform lattice; h is the spacing, so each node
// carries quadrature weight h^dim.
struct GridFunction {
  double h = 0.0;
  std::vector<Point> nodes;
  std::vector<double> values;
};

// rho^{-2} * second moment over B_rho(x0) plus mass outside, against
// lambda * rho^{-alpha}.
MembershipReport check_k1(const Kernel& k, Point x0, double rho,
                          const QuadratureSpec& quad = {});

// worst two-sided ratio of the kernel's quadratic form against the
// (2 - alpha)-normalized fractional form, over the given probes restricted
// to B_rho(x0); pass iff the ratio stays within [1/lambda, lambda].
MembershipReport check_k2(const Kernel& k, Point x0, double rho,
                          const std::vector<GridFunction>& probes);

// sup over x in B_2 of the tail moment int_{|y|>3} |y|^{1/lambda} k0(x,y) dy,
// against lambda.
MembershipReport check_k3(const Kernel& k, const QuadratureSpec& quad = {});

// int_{|y|>3} |y|^w k0(x,y) dy for one x; numeric shells plus an analytic
// tail bound. Returns infinity when the partial sums fail to converge.
double tail_weight_moment(const Kernel& k, Point x, double w,
                          const QuadratureSpec& quad = {});

}  // namespace nlparab
