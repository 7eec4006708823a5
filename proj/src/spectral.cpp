#include "qw2d/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "qw2d/angles.hpp"
#include "qw2d/errors.hpp"

namespace qw2d {

using cd = std::complex<double>;

Wavenumber Wavenumber::canonical(double k1, double k2) {
  return {reduce_angle(k1), reduce_angle(k2)};
}

double wavenumber_distance(const Wavenumber& x, const Wavenumber& y) {
  return std::max(angular_distance(x.k1, y.k1), angular_distance(x.k2, y.k2));
}

BlochMatrix bloch_matrix(const Model& model, const Wavenumber& k) {
  const Eigen::Vector2cd d1(std::polar(1.0, k.k1), std::polar(1.0, -k.k1));
  const Eigen::Vector2cd d2(std::polar(1.0, k.k2), std::polar(1.0, -k.k2));
  return d2.asDiagonal() * model.coin(2) * d1.asDiagonal() * model.coin(1);
}

TauTerms tau_of(const Model& model, const Wavenumber& k) {
  const CoinParameters& p = model.params();
  const DerivedConstants& dc = model.constants();
  TauTerms t;
  t.l1 = reduce_angle(k.k2 + k.k1 + p.alpha[1] + p.alpha[0]);
  t.l2 = reduce_angle(k.k2 - k.k1 + p.beta[1] - p.beta[0]);
  t.c1 = std::cos(t.l1);
  t.c2 = std::cos(t.l2);
  t.s1 = std::sin(t.l1);
  t.s2 = std::sin(t.l2);
  t.tau = dc.a * t.c1 - dc.b * t.c2;
  return t;
}

std::pair<cd, cd> eigenvalues(const Model& model, const Wavenumber& k) {
  const double tau = tau_of(model, k).tau;
  const double r = std::sqrt(std::max(0.0, 1.0 - tau * tau));
  const cd g = std::polar(1.0, 0.5 * model.constants().delta);
  return {cd(tau, r) * g, cd(tau, -r) * g};
}

namespace {

// Null vector of (M - lambda I) from whichever row has the larger norm.
Spinor null_vector(const BlochMatrix& m, cd lambda) {
  const cd a = m(0, 0) - lambda;
  const cd b = m(0, 1);
  const cd c = m(1, 0);
  const cd d = m(1, 1) - lambda;
  Spinor v;
  if (std::norm(a) + std::norm(b) >= std::norm(c) + std::norm(d)) {
    v << b, -a;
  } else {
    v << -d, c;
  }
  return v.normalized();
}

}  // namespace

EigenSystem eigensystem(const Model& model, const Wavenumber& k) {
  const double tau = tau_of(model, k).tau;
  if (1.0 - tau * tau <= kSpectralDegeneracyTolerance) {
    throw DegeneracyError("Bloch matrix has a repeated eigenvalue at this wavenumber");
  }
  const auto [l1, l2] = eigenvalues(model, k);
  const BlochMatrix m = bloch_matrix(model, k);
  return EigenSystem{l1, l2, null_vector(m, l1), null_vector(m, l2)};
}

VelocityPoint group_velocity(const Model& model, int p, const Wavenumber& k) {
  if (p != 1 && p != 2) throw ParameterError("band index must be 1 or 2");
  const TauTerms t = tau_of(model, k);
  const double one_minus = 1.0 - t.tau * t.tau;
  if (one_minus <= kSpectralDegeneracyTolerance) {
    throw DegeneracyError("group velocity undefined where tau^2 = 1");
  }
  const DerivedConstants& dc = model.constants();
  const double r = std::sqrt(one_minus);
  const double sign = (p == 1) ? -1.0 : 1.0;
  return {sign * (dc.a * t.s1 + dc.b * t.s2) / r, sign * (dc.a * t.s1 - dc.b * t.s2) / r};
}

InitialSpectrum::InitialSpectrum(std::vector<SiteAmplitude> sites) : sites_(std::move(sites)) {}

Spinor InitialSpectrum::operator()(const Wavenumber& k) const {
  Spinor out = Spinor::Zero();
  for (const auto& s : sites_) {
    out += std::polar(1.0, -(k.k1 * s.x1 + k.k2 * s.x2)) * s.value;
  }
  return out;
}

InitialSpectrum fourier_initial(const LatticeState& state) {
  std::vector<SiteAmplitude> sites;
  const Window& w = state.window();
  for (int i = 0; i < w.rows(); ++i) {
    for (int j = 0; j < w.cols(); ++j) {
      const Spinor s = state.at(w.x1_min + i, w.x2_min + j);
      if (s.squaredNorm() == 0.0) continue;
      sites.push_back({w.x1_min + i, w.x2_min + j, s});
    }
  }
  return InitialSpectrum(std::move(sites));
}

std::pair<double, double> band_weights(const EigenSystem& es, const Spinor& psi_hat) {
  return {std::norm(es.vec_1.dot(psi_hat)), std::norm(es.vec_2.dot(psi_hat))};
}

Spinor spectral_evolve(const Model& model, const InitialSpectrum& spectrum, std::int64_t t,
                       const Wavenumber& k) {
  if (t < 0) throw ParameterError("time must be nonnegative");
  const Spinor psi = spectrum(k);
  if (t == 0) return psi;
  const double tau = tau_of(model, k).tau;
  if (1.0 - tau * tau <= kSpectralDegeneracyTolerance) {
    // Repeated eigenvalue: power the Bloch matrix directly.
    BlochMatrix base = bloch_matrix(model, k);
    BlochMatrix acc = BlochMatrix::Identity();
    for (std::int64_t e = t; e > 0; e >>= 1) {
      if (e & 1) acc = acc * base;
      base = base * base;
    }
    return acc * psi;
  }
  const EigenSystem es = eigensystem(model, k);
  const double td = static_cast<double>(t);
  const cd w1 = std::polar(1.0, td * std::arg(es.lambda_1));
  const cd w2 = std::polar(1.0, td * std::arg(es.lambda_2));
  return w1 * es.vec_1.dot(psi) * es.vec_1 + w2 * es.vec_2.dot(psi) * es.vec_2;
}

std::vector<double> torus_nodes(int n) {
  if (n <= 0) throw ParameterError("grid size must be positive");
  std::vector<double> k(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) k[j] = -kPi + kTwoPi * (j + 0.5) / n;
  return k;
}

LatticeState spectral_lattice_state(const Model& model, const InitialSpectrum& spectrum,
                                    std::int64_t t, int grid_n, Window window) {
  const std::vector<double> nodes = torus_nodes(grid_n);
  const int rows = window.rows();
  const int cols = window.cols();

  // Separable inverse transform: first over k2 for each k1 row, then over k1.
  Eigen::ArrayXXcd f1(grid_n, grid_n), f2(grid_n, grid_n);
  for (int a = 0; a < grid_n; ++a) {
    for (int b = 0; b < grid_n; ++b) {
      const Spinor s = spectral_evolve(model, spectrum, t, {nodes[a], nodes[b]});
      f1(a, b) = s(0);
      f2(a, b) = s(1);
    }
  }
  Eigen::MatrixXcd e1(rows, grid_n), e2(grid_n, cols);
  for (int i = 0; i < rows; ++i) {
    for (int a = 0; a < grid_n; ++a) e1(i, a) = std::polar(1.0, nodes[a] * (window.x1_min + i));
  }
  for (int b = 0; b < grid_n; ++b) {
    for (int j = 0; j < cols; ++j) e2(b, j) = std::polar(1.0, nodes[b] * (window.x2_min + j));
  }
  const double norm = 1.0 / (static_cast<double>(grid_n) * grid_n);
  Eigen::ArrayXXcd c1 = (e1 * f1.matrix() * e2).array() * norm;
  Eigen::ArrayXXcd c2 = (e1 * f2.matrix() * e2).array() * norm;
  return LatticeState(window, std::move(c1), std::move(c2), t);
}

CharFunctionValue numeric_char_function(const Model& model, const InitialSpectrum& spectrum,
                                        const Eigen::Vector2d& xi, int grid_n) {
  if (grid_n < 16) throw ParameterError("characteristic-function grid needs n >= 16");
  const std::vector<double> nodes = torus_nodes(grid_n);
  CharFunctionValue out;
  cd total = 0.0;
  for (int a = 0; a < grid_n; ++a) {
    cd row = 0.0;
    for (int b = 0; b < grid_n; ++b) {
      const Wavenumber k{nodes[a], nodes[b]};
      const double tau = tau_of(model, k).tau;
      if (1.0 - tau * tau <= kSpectralDegeneracyTolerance) {
        ++out.skipped;
        continue;
      }
      const EigenSystem es = eigensystem(model, k);
      const auto [p1, p2] = band_weights(es, spectrum(k));
      const VelocityPoint v = group_velocity(model, 1, k);
      const double phase = xi(0) * v.v1 + xi(1) * v.v2;
      // v_2 = -v_1
      row += p1 * std::polar(1.0, phase) + p2 * std::polar(1.0, -phase);
    }
    total += row;
  }
  out.value = total / (static_cast<double>(grid_n) * grid_n);
  return out;
}

}  // namespace qw2d
