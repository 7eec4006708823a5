#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "qw2d/angles.hpp"
#include "qw2d/errors.hpp"
#include "qw2d/spectral.hpp"

using namespace qw2d;
using cd = std::complex<double>;

namespace {

const Model kRef(CoinParameters::from_squares(0.9, 0.1));
const Model kPhased(CoinParameters::from_squares(0.7, 0.4, {0.3, -0.8}, {1.1, 0.2},
                                                 {0.5, -0.4}));

Spinor spinor(cd x, cd y) {
  Spinor s;
  s << x, y;
  return s;
}

std::vector<Wavenumber> random_k(int n, unsigned seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  std::vector<Wavenumber> ks;
  for (int i = 0; i < n; ++i) ks.push_back({u(g), u(g)});
  return ks;
}

}  // namespace

TEST_CASE("bloch trace at hand-evaluated points") {
  CHECK(std::abs(bloch_matrix(kRef, {0.0, 0.0}).trace()) < 1e-14);
  CHECK(std::abs(tau_of(kRef, {0.0, 0.0}).tau) < 1e-15);
  const Wavenumber q{kPi / 4, kPi / 4};
  CHECK(std::abs(tau_of(kRef, q).tau + 0.3) < 1e-15);
  CHECK(std::abs(bloch_matrix(kRef, q).trace() - cd(-0.6)) < 1e-14);
}

TEST_CASE("eigenvalues against a general solver") {
  const auto [l1, l2] = eigenvalues(kRef, {0.0, 0.0});
  CHECK(std::abs(l1 - cd(0, 1)) < 1e-15);
  CHECK(std::abs(l2 - cd(0, -1)) < 1e-15);
  for (const Model* m : {&kRef, &kPhased}) {
    const cd det = std::polar(1.0, m->constants().delta);
    for (const Wavenumber& k : random_k(2000, 11)) {
      const BlochMatrix b = bloch_matrix(*m, k);
      const auto [e1, e2] = eigenvalues(*m, k);
      CHECK(std::abs(std::abs(e1) - 1.0) < 1e-12);
      CHECK(std::abs(b.determinant() - det) < 1e-12);
      CHECK(std::abs(e1 + e2 - b.trace()) < 1e-12);
      Eigen::ComplexEigenSolver<BlochMatrix> solver(b);
      const cd s0 = solver.eigenvalues()(0);
      const cd s1 = solver.eigenvalues()(1);
      CHECK(std::min(std::abs(s0 - e1) + std::abs(s1 - e2), std::abs(s0 - e2) + std::abs(s1 - e1)) <
            1e-12);
    }
  }
}

TEST_CASE("eigensystem residual and completeness") {
  const Spinor psi = spinor(0.6, cd(0.0, 0.8));
  for (const Wavenumber& k : random_k(1000, 12)) {
    const EigenSystem es = eigensystem(kPhased, k);
    const BlochMatrix b = bloch_matrix(kPhased, k);
    CHECK((b * es.vec_1 - es.lambda_1 * es.vec_1).norm() < 1e-10);
    CHECK((b * es.vec_2 - es.lambda_2 * es.vec_2).norm() < 1e-10);
    const auto [p1, p2] = band_weights(es, psi);
    CHECK(std::abs(p1 + p2 - psi.squaredNorm()) < 1e-12);
  }
  const Model deg(CoinParameters::from_squares(0.5, 0.5));
  CHECK_THROWS_AS(eigensystem(deg, {-kPi / 2, kPi / 2}), DegeneracyError);
}

TEST_CASE("group velocity") {
  const Wavenumber q{kPi / 4, kPi / 4};
  const VelocityPoint v = group_velocity(kRef, 1, q);
  const double want = -0.3 / std::sqrt(0.91);
  CHECK(std::abs(v.v1 - want) < 1e-14);
  CHECK(std::abs(v.v2 - want) < 1e-14);
  const VelocityPoint w = group_velocity(kRef, 2, q);
  CHECK(w.v1 == -v.v1);
  CHECK(w.v2 == -v.v2);
  CHECK_THROWS_AS(group_velocity(kRef, 3, q), ParameterError);

  const double h = 1e-5;
  for (const Wavenumber& k : random_k(1000, 13)) {
    for (int p = 1; p <= 2; ++p) {
      auto theta = [&](double a, double b) {
        const auto e = eigenvalues(kPhased, {a, b});
        return p == 1 ? e.first : e.second;
      };
      const double d1 = std::arg(theta(k.k1 + h, k.k2) / theta(k.k1 - h, k.k2)) / (2 * h);
      const double d2 = std::arg(theta(k.k1, k.k2 + h) / theta(k.k1, k.k2 - h)) / (2 * h);
      const VelocityPoint g = group_velocity(kPhased, p, k);
      const double err = std::hypot(g.v1 + d1, g.v2 + d2) / std::max(std::hypot(g.v1, g.v2), 1e-3);
      CHECK(err < 1e-6);
    }
  }
}

TEST_CASE("fourier transform of finite states") {
  const InitialSpectrum delta({{0, 0, spinor(0.6, cd(0, 0.8))}});
  CHECK((delta({1.3, -0.4}) - spinor(0.6, cd(0, 0.8))).norm() < 1e-15);
  const InitialSpectrum shifted({{1, 0, spinor(1.0, 0.0)}});
  const Spinor s = shifted({0.7, 2.0});
  CHECK(std::abs(s(0) - std::polar(1.0, -0.7)) < 1e-15);
  CHECK(s(1) == cd(0.0));

  const double r = 1.0 / std::sqrt(2.0);
  const InitialSpectrum two({{0, 0, spinor(r, 0.0)}, {1, -2, spinor(0.0, cd(0, r))}});
  const std::vector<double> nodes = torus_nodes(16);
  double total = 0.0;
  for (double a : nodes) {
    for (double b : nodes) total += two({a, b}).squaredNorm();
  }
  CHECK(std::abs(total / 256.0 - 1.0) < 1e-10);
}

TEST_CASE("spectral evolution") {
  const InitialSpectrum psi({{0, 0, spinor(0.6, cd(0, 0.8))}});
  const Wavenumber k{0.4, -1.2};
  CHECK((spectral_evolve(kPhased, psi, 0, k) - psi(k)).norm() == 0.0);
  CHECK((spectral_evolve(kPhased, psi, 1, k) - bloch_matrix(kPhased, k) * psi(k)).norm() < 1e-12);
  const BlochMatrix b = bloch_matrix(kPhased, k);
  CHECK((spectral_evolve(kPhased, psi, 5, k) - b * b * b * b * b * psi(k)).norm() < 1e-12);

  const Model deg(CoinParameters::from_squares(0.5, 0.5));
  const Wavenumber flat{0.0, kPi};
  const BlochMatrix d = bloch_matrix(deg, flat);
  CHECK((spectral_evolve(deg, psi, 3, flat) - d * d * d * psi(flat)).norm() < 1e-12);
}

TEST_CASE("spectral lattice reconstruction") {
  const LatticeState s0 = initial_state_delta(spinor(1.0, 0.0));
  for (int t : {1, 20}) {
    const LatticeState lat = evolve(kRef, s0, t);
    const LatticeState sp = spectral_lattice_state(kRef, fourier_initial(s0), t, 2 * t + 1,
                                                   lat.window());
    const double diff = std::max((lat.component1() - sp.component1()).abs().maxCoeff(),
                                 (lat.component2() - sp.component2()).abs().maxCoeff());
    CHECK(diff < (t == 1 ? 1e-12 : 1e-8));
  }
}

TEST_CASE("characteristic function on the torus") {
  const InitialSpectrum psi({{0, 0, spinor(1.0, 0.0)}});
  CHECK(std::abs(numeric_char_function(kRef, psi, {0.0, 0.0}, 64).value - 1.0) < 1e-10);
  CHECK_THROWS_AS(numeric_char_function(kRef, psi, {1.0, 0.0}, 8), ParameterError);
}
