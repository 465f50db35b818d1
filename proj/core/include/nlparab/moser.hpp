#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nlparab/field.hpp"
#include "nlparab/geometry.hpp"
#include "nlparab/inequalities.hpp"

namespace nlparab {

// Time side of the reference cylinder pair: plus is the forward cylinder
// (1 - r^a, 1) x B_r, minus the backward one (-r^a, 0) x B_r.
enum class CylinderSide { plus, minus };

// exponent growth factor of the iteration chain (dimensions 1 and 2)
double iteration_kappa(double alpha);

// One measured space-time moment (integral |u|^p)^{1/p} over a cylinder.
// mass is the quadrature measure actually covered (sum of cell volumes), so
// constants obey value = c * mass^{1/p} exactly.
struct MomentValue {
  Cylinder cylinder;
  double p = 1.0;
  double value = 0.0;
  double mass = 0.0;
};

// Midpoint quadrature of (integral_cyl |u|^p)^{1/p}: cells are slice
// intervals x lattice cells, counted when the cell midpoint lies strictly
// inside the cylinder. p = +/-infinity returns the grid max/min of |u| over
// nodes and slice times strictly inside. Negative p requires a strictly
// positive field on the cylinder.
MomentValue moment(const SolutionField& field, const Cylinder& cyl, double p);

// One rung of the moment ladder on the backward (minus) or forward (plus)
// cylinders, 1/2 <= r < R <= 1. With kappa the iteration exponent factor
// and m = u + |f|_inf (or u + 1e-8 when f vanishes):
//   lhs = (integral_{Q(r)} m^{-kappa p})^{1/kappa}   [minus side; plus flips sign]
//   rhs = A_shape * integral_{Q(R)} m^{-p}
//   A_shape = (p+1)^2 ((R-r)^{-alpha} + (R^alpha - r^alpha)^{-1})
// constant_required = lhs/rhs is the measured step constant against the
// admissible shape; inputs carry A_emp, A_shape, and the run parameters.
// minus admits any p > 0; plus requires p in (0, 1/kappa].
GapResult moment_step(const SolutionField& field, double r, double R, double p,
                      CylinderSide side);

// outcome of one verified bound: lhs <= f(constant) * rhs with the measured
// constant reported, plus named run details (schedules, shape factors)
struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  std::vector<std::pair<std::string, double>> details;
};

// Chains moment_step on the backward cylinders with radii
//   r_m = r + (R-r)/2^m          (alpha >= 1)
//   r_m = (r^a + (R^a-r^a)/2^m)^{1/a}   otherwise
// and exponents p kappa^m until the running moment has stabilized to the
// supremum of m^{-1}. Verifies
//   sup_{Q_minus(r)} m^{-1} <= (C/G1)^{1/p} (integral_{Q_minus(R)} m^{-p})^{1/p}
// with G1 = (R-r)^{d+alpha} for alpha >= 1, (R^a-r^a)^{(d+a)/a} below, and
// reports the measured C. details carry G1 and, per rung m, the radius r<m>,
// exponent p<m>, and measured step constant step<m> (identical to the
// matching moment_step call). p in (0, 1].
BoundReport iterate_inf(const SolutionField& field, double r, double R,
                        double p);

// Verifies the forward-cylinder mass bound
//   integral_{Q_plus(r)} m <= (C / (|Q_plus(1)| G2))^{1/p - 1}
//                             (integral_{Q_plus(R)} m^p)^{1/p}
// with G2 = (R-r)^{w1} min (alpha0 (R-r))^{w2}, w1 = 2d+6+4/d,
// w2 = 2d/alpha0 + 3 + 2/d, and reports the measured C.
// p in (0, 1/kappa), radii 1/2 <= r < R <= 1.
BoundReport iterate_L1(const SolutionField& field, double r, double R,
                       double p);

// Sublevel measure of log m against the bound C |B1| / s. The centering
// constant a is computed, not fitted: with the weight
// psi^2(x) = ((3/2 - |x|) min 1) max 0, a is the psi^2-weighted spatial mean
// of -log(m/psi) at time 0. Both sides share the same a, which is what makes
// the two calls a joint check:
//   plus side:  measure of (0,1) x B_1 cells with log m + a < -s
//   minus side: measure of (-1,0) x B_1 cells with log m + a > s
// c_required = measure * s / |B_1| is the smallest admissible constant for
// this s.
struct SublevelReport {
  double a = 0.0;
  double s = 0.0;
  double measure = 0.0;
  double bound_unit = 0.0;  // |B_1| / s
  double c_required = 0.0;
};

SublevelReport log_sublevel(const SolutionField& field, double s,
                            CylinderSide side);

// constants of the abstract iteration lemma on a nondecreasing domain family
struct BombieriGiustiParams {
  double theta = 0.5;  // smallest domain parameter, in [1/2, 1)
  double eta = 1.0;    // admissible exponent fraction, in (0, 1]
  double m = 1.0;      // gap exponent of the hypothesis shape
  double c0 = 1.0;     // hypothesis constant to verify against
  double p0 = 1.0;     // target exponent (may be +infinity)
};

struct BombieriGiustiReport {
  double c0_moment = 0.0;    // smallest c0 satisfying every measured pair bound
  double c0_sublevel = 0.0;  // smallest c0 satisfying the log-measure bound
  bool hypotheses_pass = false;  // both measured c0 <= params.c0
  double lhs = 0.0;              // (integral_{U(theta)} w^{p0})^{1/p0}
  double c_required = 0.0;       // lhs / |U(1)|^{1/p0}
  int pairs_checked = 0;
};

// Abstract two-hypothesis check: given measured moments (r, p) ->
// (integral_{U(r)} w^p)^{1/p} (p = +infinity means sup), sublevel measures
// s -> |U(1) ∩ {log w > s}|, and the domain measure |U(1)|, verifies
//   (integral_{U(r)} w^{p0})^{1/p0}
//       <= (c0 / ((R-r)^m |U(1)|))^{1/p - 1/p0} (integral_{U(R)} w^p)^{1/p}
// over all measured pairs r < R with p in (0, 1 min eta p0), plus the
// sublevel bound c0 |U(1)| / s, and reports the smallest empirical constant
// C in (integral_{U(theta)} w^{p0})^{1/p0} <= C |U(1)|^{1/p0}. The moment
// family must contain the target exponent p0 at r = theta and at least one
// admissible (pair, p); otherwise the family is rejected as incomplete.
BombieriGiustiReport bombieri_giusti_check(
    const std::map<std::pair<double, double>, double>& moments,
    const std::map<double, double>& sublevel, double u1_measure,
    const BombieriGiustiParams& params);

// the comparison quotient between early mass and late minimum
struct HarnackReport {
  double alpha = 0.0;
  double l1_minus = 0.0;  // |u|_{L1} over the early cylinder
  double inf_plus = 0.0;  // grid min over the late cylinder
  double f_inf = 0.0;
  double quotient = 0.0;  // l1_minus / (inf_plus + f_inf), +inf on 0 denominator
};

// quotient |u|_{L1(U_minus)} / (inf_{U_plus} u + f_norm) on the standard
// comparison domains; a vanishing denominator reports +infinity, not an error
HarnackReport harnack_quotient(const SolutionField& field, double f_norm);

struct GrowthResult {
  bool applicable = false;    // early density hypothesis met
  double density = 0.0;       // measure fraction of {u >= 1} in the early cylinder
  double delta_measured = 0.0;  // grid min over the late cylinder
  bool forcing_small = true;  // sup |f| <= eps0
  bool pass = false;
};

// Measures the growth-of-positivity statement on the domains anchored to
// (-2, 0) x B_2: if u >= 1 on at least a sigma fraction of the early
// cylinder (cell measure) and the forcing is eps0-small, the minimum over
// the late cylinder is reported and pass = delta_measured > delta_required.
// A field failing the density hypothesis yields applicable = false, not an
// error. The threshold is configuration, not a built-in constant.
GrowthResult growth_check(const SolutionField& field, double sigma,
                          double eps0, double delta_required = 0.0);

// oscillation decay across the shrinking backward cylinders D(6^{-nu})
struct OscillationReport {
  std::vector<int> levels;   // resolvable levels nu
  std::vector<double> osc;   // sup - inf per level, aligned with levels
  double beta_fit = 0.0;     // decay exponent from the log-linear fit
  double fit_intercept = 0.0;  // intercept of the same fit (natural log)
  double sup_norm = 0.0;     // max |u| over the stored history
};

// Measures osc(u) over D(6^{-nu}) anchored at the final time and the grid
// center, nu = 0 upward while the ball still resolves (radius >= 4h/3 and
// at least 8 nodes strictly inside, at least one slice in the time extent).
// beta_fit is minus the least-squares slope of log osc against nu log 6,
// using only levels with positive oscillation; a constant field reports
// +infinity. Fewer than 3 resolvable levels is an error.
OscillationReport oscillation_decay(const SolutionField& field);

struct HolderReport {
  double seminorm = 0.0;
  double eta = 0.0;    // largest r <= 1/2 keeping every D_r(t,x) inside the domain
  double bound = 0.0;  // 12 |u|_inf / eta^beta
  bool pass = false;
};

// Parabolic seminorm of u over grid points of subcyl:
//   max |u(t,x) - u(s,y)| / (|x-y| + |t-s|^{1/alpha})^beta
// with long histories thinned to about 50 slices. The admissible scale eta
// is the largest r <= 1/2 such that the backward cylinder
// (t - 2 r^alpha, t) x B_{3r}(x) stays inside the field domain for every
// point of subcyl; pass compares against 12 |u|_inf / eta^beta.
HolderReport holder_seminorm(const SolutionField& field,
                             const Cylinder& subcyl, double alpha, double beta);

// Energy bound for v = m^{(1-q)/2}, m = u + |f|_inf (or u + 1e-8):
//   lhs = sup_{t in I_minus(r)} integral_{B_r} v^2
//         + integral_{Q_minus(r)} form of v over pairs inside B_r
//   rhs = (q-1) theta(q) ((R-r)^{-alpha} + (R^alpha - r^alpha)^{-1})
//         * integral_{Q_minus(R)} v^2
// with theta(q) = max(4, (6q-5)/2); constant_required = lhs/rhs is the
// measured energy constant. q > 1, radii 1/2 <= r < R <= 1.
GapResult caccioppoli_check(const SolutionField& field, double r, double R,
                            double q);

}  // namespace nlparab
