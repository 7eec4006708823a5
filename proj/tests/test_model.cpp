#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <Eigen/LU>

#include "qw2d/errors.hpp"
#include "qw2d/model.hpp"

using namespace qw2d;

TEST_CASE("reference model products") {
  const Model m(CoinParameters::from_squares(0.9, 0.1));
  const DerivedConstants& dc = m.constants();
  CHECK(dc.a == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(dc.b == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(dc.delta == 0.0);
  CHECK(dc.phi_1 == 0.0);
  CHECK(dc.phi_2 == 0.0);
  CHECK_FALSE(dc.degenerate);
}

TEST_CASE("derived constants by hand") {
  const DerivedConstants dc = constants_from_ab(0.3, 0.3);
  CHECK(std::abs(dc.d_j - 0.64) < 1e-12);
  CHECK(std::abs(dc.sqrt_d_j - 0.8) < 1e-12);
  CHECK(std::abs(dc.j_plus + 1.0 / 9.0) < 1e-12);
  CHECK(std::abs(dc.j_minus + 9.0) < 1e-12);
  CHECK(std::abs(dc.axis_r1 - 1.8) < 1e-12);
  CHECK(std::abs(dc.axis_r2 - 0.2) < 1e-12);
  CHECK(std::abs(dc.axis_t1 - 0.2) < 1e-12);
  CHECK(std::abs(dc.axis_t2 - 1.8) < 1e-12);
  CHECK(std::abs(dc.j_plus * dc.j_minus - 1.0) < 1e-15);
}

TEST_CASE("degenerate case") {
  const Model m(CoinParameters::from_squares(0.5, 0.5));
  const DerivedConstants& dc = m.constants();
  CHECK(dc.degenerate);
  CHECK(std::abs(dc.a - 0.5) < 1e-15);
  CHECK(std::abs(dc.b - 0.5) < 1e-15);
  CHECK(dc.d_j == 0.0);
  for (double axis : {dc.axis_r1, dc.axis_r2, dc.axis_t1, dc.axis_t2}) {
    CHECK(std::abs(axis - 1.0) < 1e-12);
  }
}

TEST_CASE("parameter domain") {
  CHECK_THROWS_AS(Model(CoinParameters::from_squares(1.0, 0.5)), ParameterError);
  CHECK_THROWS_AS(Model(CoinParameters::from_squares(0.0, 0.5)), ParameterError);
  CHECK_THROWS_AS(Model(CoinParameters::from_squares(0.5, -0.1)), ParameterError);
  CHECK_THROWS_AS(Model(CoinParameters::from_squares(0.5, 0.5, {NAN, 0.0})), ParameterError);
}

TEST_CASE("coins are unitary with determinant e^{i delta}") {
  const Model m(CoinParameters::from_squares(0.7, 0.4, {0.3, -0.8}, {1.1, 0.2}, {0.5, -0.4}));
  for (int q = 1; q <= 2; ++q) {
    const Eigen::Matrix2cd& c = m.coin(q);
    CHECK((c * c.adjoint() - Eigen::Matrix2cd::Identity()).norm() < 1e-14);
    const double delta = m.params().delta[q - 1];
    CHECK(std::abs(c.determinant() - std::polar(1.0, delta)) < 1e-14);
  }
  CHECK(std::abs(m.modulus_a(1) * m.modulus_a(1) - 0.7) < 1e-14);
  CHECK(std::abs(m.modulus_b(2) * m.modulus_b(2) - 0.6) < 1e-14);
  CHECK_THROWS_AS(m.coin(3), ParameterError);
}

TEST_CASE("phi roots") {
  for (double a : {0.1, 0.25, 0.4}) {
    for (double b : {0.05, 0.3, 0.55}) {
      if (a + b >= 1.0) continue;
      const DerivedConstants dc = constants_from_ab(a, b);
      const double jp = dc.j_plus;
      CHECK(std::abs(a * b * jp * jp + (1 - a * a - b * b) * jp + a * b) < 1e-12);
      CHECK(jp > -1.0);
      CHECK(jp < 0.0);
      CHECK(std::abs(dc.axis_r1 * dc.axis_t1 - 4 * a * a) < 1e-12);
      CHECK(std::abs(dc.axis_r2 * dc.axis_t2 - 4 * b * b) < 1e-12);
    }
  }
}
