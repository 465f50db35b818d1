#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlparab/geometry.hpp"

using namespace nlparab;

TEST_CASE("ball membership is strict") {
  Ball b{{0.0, 0.0}, 1.0};
  CHECK(b.contains({0.9, 0.0}));
  CHECK_FALSE(b.contains({1.0, 0.0}));
  CHECK_FALSE(b.contains({-1.0, 0.0}));
  CHECK(Ball{{2.0, 0.0}, 0.5}.contains({1.6, 0.0}));
}

TEST_CASE("cylinder time windows follow the orientation") {
  const double a = 1.5;
  const double ra = std::pow(0.5, a);
  Cylinder c(0.0, origin, 0.5, a, Orientation::centered);
  CHECK(c.t_lo() == doctest::Approx(-ra).epsilon(1e-15));
  CHECK(c.t_hi() == doctest::Approx(ra).epsilon(1e-15));
  Cylinder p(0.0, origin, 0.5, a, Orientation::plus);
  CHECK(p.t_lo() == 0.0);
  CHECK(p.t_hi() == doctest::Approx(ra).epsilon(1e-15));
  Cylinder m(0.0, origin, 0.5, a, Orientation::minus);
  CHECK(m.t_lo() == doctest::Approx(-ra).epsilon(1e-15));
  CHECK(m.t_hi() == 0.0);
}

TEST_CASE("cylinder membership is open in time and space") {
  Cylinder c(0.0, origin, 1.0, 1.0, Orientation::minus);  // (-1,0) x B_1
  CHECK(c.contains(-0.5, {0.5, 0.0}));
  CHECK_FALSE(c.contains(0.0, {0.5, 0.0}));
  CHECK_FALSE(c.contains(-1.0, {0.5, 0.0}));
  CHECK_FALSE(c.contains(-0.5, {1.0, 0.0}));
}

TEST_CASE("cylinder constructor rejects bad parameters") {
  CHECK_THROWS_AS(Cylinder(0, origin, 0.0, 1.0, Orientation::plus),
                  std::invalid_argument);
  CHECK_THROWS_AS(Cylinder(0, origin, 1.0, 2.0, Orientation::plus),
                  std::invalid_argument);
  CHECK_THROWS_AS(Cylinder(0, origin, 1.0, 1.5, Orientation::box),
                  std::invalid_argument);
  CHECK_THROWS_AS(Cylinder::box(1.0, 1.0, origin, 1.0, 1.5),
                  std::invalid_argument);
}

TEST_CASE("cylinder measure") {
  Cylinder c = Cylinder::box(-2.0, 0.0, origin, 2.0, 1.5);
  CHECK(c.measure(1) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(c.measure(2) == doctest::Approx(2.0 * M_PI * 4.0).epsilon(1e-15));
}

TEST_CASE("dyadic cylinder geometry") {
  const double a = 1.5;
  DyadicCylinder d = DyadicCylinder::at_level(1, a);
  CHECK(d.r == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  Cylinder c = d.cylinder();
  CHECK(c.radius() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c.t_hi() == 0.0);
  CHECK(c.t_lo() ==
        doctest::Approx(-2.0 * std::pow(1.0 / 6.0, a)).epsilon(1e-14));
  CHECK_THROWS_AS(DyadicCylinder::at_level(-1, a), std::invalid_argument);
}

TEST_CASE("dyadic level one sits inside the late growth cylinder") {
  // needed so a positivity bound on the late cylinder controls D(1/6)
  for (double a : {1.0, 1.5, 1.9, 1.99}) {
    Cylinder d = DyadicCylinder::at_level(1, a).cylinder();
    Cylinder late = growth_domains(a).late;
    CHECK(d.t_lo() >= late.t_lo());
    CHECK(d.t_hi() <= late.t_hi());
    CHECK(d.radius() <= late.radius());
  }
}

TEST_CASE("rho_hat backward dyadic distance") {
  CHECK(rho_hat(-1.0, {0.9, 0.0}, 1.5) == doctest::Approx(0.5).epsilon(1e-15));
  // spatial branch dominates when |x|/3 exceeds the time radius
  CHECK(rho_hat(0.0, {1.8, 0.0}, 1.5) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(rho_hat(-1.0, {0.0, 0.0}, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::isinf(rho_hat(0.5, origin, 1.5)));
  CHECK(std::isinf(rho_hat(-2.5, origin, 1.5)));
}

TEST_CASE("harnack domains anchor to the reference cylinder") {
  const double a = 1.5;
  const double ra = std::pow(0.5, a);
  HarnackDomains d = harnack_domains(a);
  CHECK(d.plus.t_hi() == 1.0);
  CHECK(d.plus.t_lo() == doctest::Approx(1.0 - ra).epsilon(1e-15));
  CHECK(d.plus.radius() == 0.5);
  CHECK(d.minus.t_lo() == -1.0);
  CHECK(d.minus.t_hi() == doctest::Approx(-1.0 + ra).epsilon(1e-15));
  CHECK(d.minus.radius() == 0.5);
}

TEST_CASE("growth domains anchor to (-2,0) x B_2") {
  const double a = 1.9;
  const double ra = std::pow(0.5, a);
  GrowthDomains d = growth_domains(a);
  CHECK(d.early.t_lo() == -2.0);
  CHECK(d.early.t_hi() == doctest::Approx(-2.0 + ra).epsilon(1e-15));
  CHECK(d.late.t_hi() == 0.0);
  CHECK(d.late.t_lo() == doctest::Approx(-ra).epsilon(1e-15));
  CHECK(d.full.t_lo() == -2.0);
  CHECK(d.full.t_hi() == 0.0);
  CHECK(d.full.radius() == 2.0);
}
