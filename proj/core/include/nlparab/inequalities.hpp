#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nlparab/grid.hpp"
#include "nlparab/kernel.hpp"

namespace nlparab {

// one evaluated inequality: gap = lhs - rhs, oriented so gap >= 0 means it
// holds.  Ratio-style checks also report the smallest constant that would
// close the gap; for plain lemma checks that slot stays NaN.
struct GapResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double constant_required;  // NaN unless the op estimates a constant
  std::vector<std::pair<std::string, double>> inputs;

  GapResult();
};

// mean-value comparison: max over the sampled partition of f' + (g')^2
// against the secant expression (f(b)-f(a))/(b-a) + ((g(b)-g(a))/(b-a))^2.
// fp, gp sample the derivatives on a uniform partition of [a, b].
GapResult mean_value_gap(const std::vector<double>& fp,
                         const std::vector<double>& gp, double f_a, double f_b,
                         double g_a, double g_b, double a, double b);

// convexity estimate: (b-a)(a^-q - b^-q) >= (4q/(1-q)^2)(b^((1-q)/2) -
// a^((1-q)/2))^2 for q > 0, q != 1
GapResult convex_gap(double a, double b, double q);

// weighted variant for q > 1 with nonneg factors tau1, tau2 and
// theta(q) = max(4, (6q-5)/2); tau = 0 enters through the analytic limits
GapResult guelle_one(double a, double b, double q, double tau1, double tau2);

// weighted variant for q in (0,1): zeta = 4q/(1-q), zeta1 = zeta/6,
// zeta2 = zeta + 9/q
GapResult guelle_two(double a, double b, double q, double tau1, double tau2);

// elementary log estimate: (a-b)(1/b - 1/a) >= (log a - log b)^2
GapResult log_gap(double a, double b);

// discrete computation rule for logarithms: tests
//   E(w, -psi^2/w) >= sum_pairs 2 w_ij psi_i psi_j (dlog(w/psi))^2
//                     - 3 E(psi, psi)
// with every term built from the assembled pair weights; the log-ratio sum
// runs over pairs where both psi values are positive
GapResult log_form_bound(const Kernel& kernel, const Grid& grid,
                         const std::vector<double>& w,
                         const std::vector<double>& psi, double t = 0.0);

// Rayleigh-type Sobolev estimate with sigma = 3/(3-alpha):
//   (integral |v|^(2 sigma))^(1/sigma)
//     <= S * [(2-alpha) double-integral |dv|^2 |x-y|^(-d-alpha)
//             + R^-alpha integral v^2]
// for v supported on B_R, R <= 2; reports the smallest such S
GapResult sobolev_ratio(const Grid& grid, const std::vector<double>& v,
                        double alpha, double R);

// weighted Poincare estimate with Psi(x) = (3/2 - |x|) ∧ 1 clipped at 0:
//   sum (v - v_Psi)^2 Psi h^d <= c2 * h^d sum_pairs 2 w_ij (dv)^2 min(Psi)
// reports c2_required = lhs/rhs; a degenerate zero rhs against nonconstant v
// is flagged by c2_required = infinity
GapResult poincare_ratio(const Kernel& kernel, const Grid& grid,
                         const std::vector<double>& v, double t = 0.0);

}  // namespace nlparab
