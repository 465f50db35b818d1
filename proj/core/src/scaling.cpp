#include "nlparab/scaling.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace nlparab {

namespace {

// k0 -> r^{d+alpha} k0(r., r.) per profile kind; power laws are invariant
Profile rescale_profile(const Profile& profile, int dim, double alpha,
                        double r, Point xi) {
  const double lift = std::pow(r, dim + alpha);
  if (std::holds_alternative<PowerProfile>(profile)) return profile;
  if (std::holds_alternative<ConeProfile>(profile)) return profile;
  if (const auto* tab = std::get_if<TableProfile>(&profile)) {
    TableProfile out = *tab;
    out.near_coef *= std::pow(r, alpha - tab->near_alpha);
    out.tail_coef *= std::pow(r, alpha - tab->tail_alpha);
    for (double& s : out.radii) s /= r;
    for (double& v : out.values) v *= lift;
    return out;
  }
  const auto& gen = std::get<GenericProfile>(profile);
  GenericProfile out;
  out.tail_alpha = gen.tail_alpha;
  out.tail_coef = gen.tail_coef * std::pow(r, alpha - gen.tail_alpha);
  out.k0 = [k0 = gen.k0, lift, r, xi](Point x, Point y) {
    return lift * k0(r * x + xi, r * y + xi);
  };
  return out;
}

}  // namespace

ScaledProblem scale_problem(const Kernel& kernel, const SolutionField& field,
                            double r, Point xi, double tau) {
  if (!(r > 0.0)) throw std::invalid_argument("scale must be positive");
  if (field.times.size() < 2 || field.values.size() != field.times.size())
    throw std::invalid_argument("field holds no time history");
  const Grid& g = field.grid;
  if (g.dim == 1 && xi[1] != 0.0)
    throw std::invalid_argument("shift must be one-dimensional");

  const double alpha = kernel.alpha();
  const double ra = std::pow(r, alpha);

  // coverage of the scaled reference cylinder inside the interior region
  const double ttol = 1e-9 * (1.0 + std::fabs(field.times.back() -
                                              field.times.front()));
  if (field.times.front() > tau - ra + ttol ||
      field.times.back() < tau + ra - ttol ||
      dist(xi, g.omega_center) + 2.0 * r >
          g.omega_radius + 1e-9 * (1.0 + g.omega_radius))
    throw std::invalid_argument(
        "field domain does not cover the scaled reference cylinder");

  // lattice alignment of the shift
  const long m1 = std::lround(xi[0] / g.h);
  const long m2 = g.dim == 2 ? std::lround(xi[1] / g.h) : 0;
  const double atol = 1e-9 * (1.0 + norm(xi));
  if (std::fabs(m1 * g.h - xi[0]) > atol ||
      std::fabs(m2 * g.h - xi[1]) > atol)
    throw std::invalid_argument("shift must be aligned with the lattice");

  ScaledProblem out{kernel, SolutionField{}, ra};

  // kernel transport
  Kernel scaled(kernel.dim(), alpha,
                rescale_profile(kernel.profile(), kernel.dim(), alpha, r, xi),
                kernel.alpha0(), kernel.lambda());
  if (kernel.has_coefficient()) {
    scaled = scaled.with_coefficient(
        [k = kernel, ra, r, xi, tau](double t, Point x, Point y) {
          return k.coeff(ra * t + tau, r * x + xi, r * y + xi);
        },
        kernel.time_dependent());
  }
  out.kernel = scaled;

  // re-indexed lattice: trim to the symmetric box that keeps every new node
  // on an existing original lattice point
  const double shift_len = norm(xi);
  const double h2 = g.h / r;
  const double collar2 = (g.box_radius - shift_len) / r;
  const double omega2 = g.omega_radius / r;
  const Point center2 = (1.0 / r) * (g.omega_center - xi);

  SolutionField& f = out.field;
  f.grid = build_grid(omega2, collar2, h2, g.dim, 2000000, center2);
  f.kernel = scaled;
  f.dt = field.dt / ra;
  f.theta = field.theta;

  for (double t : field.times) f.times.push_back((t - tau) / ra);

  std::vector<int> source(f.grid.size(), -1);
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    const auto [k1, k2] = f.grid.index[i];
    const int id = g.at(k1 + m1, k2 + m2);
    if (id < 0)
      throw std::logic_error("re-indexed node missing from the source lattice");
    source[i] = id;
  }
  f.values.reserve(field.values.size());
  for (const auto& row : field.values) {
    std::vector<double> nrow(f.grid.size());
    for (std::size_t i = 0; i < nrow.size(); ++i)
      nrow[i] = row[std::size_t(source[i])];
    f.values.push_back(std::move(nrow));
  }

  if (field.forcing)
    f.forcing = [fn = field.forcing, ra, r, xi, tau](double t, Point x) {
      return ra * fn(ra * t + tau, r * x + xi);
    };
  if (field.exterior.at)
    f.exterior.at = [fn = field.exterior.at, ra, r, xi, tau](double t,
                                                             Point x) {
      return fn(ra * t + tau, r * x + xi);
    };
  if (field.exterior.far)
    f.exterior.far = [fn = field.exterior.far, ra, tau](double t) {
      return fn(ra * t + tau);
    };
  return out;
}

}  // namespace nlparab
