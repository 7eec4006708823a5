#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "qw2d/lattice.hpp"
#include "qw2d/model.hpp"

namespace qw2d {

struct Wavenumber {
  double k1 = 0.0;
  double k2 = 0.0;

  // Both components reduced onto [-pi, pi).
  static Wavenumber canonical(double k1, double k2);
};

// Max of the two circular component distances.
double wavenumber_distance(const Wavenumber& x, const Wavenumber& y);

struct VelocityPoint {
  double v1 = 0.0;
  double v2 = 0.0;

  VelocityPoint operator-() const { return {-v1, -v2}; }
};

using BlochMatrix = Eigen::Matrix2cd;

// diag(e^{ik2}, e^{-ik2}) C_{0,2} diag(e^{ik1}, e^{-ik1}) C_{0,1}
BlochMatrix bloch_matrix(const Model& model, const Wavenumber& k);

struct TauTerms {
  double l1 = 0.0;
  double l2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double tau = 0.0;  // a c1 - b c2; the Bloch trace is 2 tau e^{i delta/2}
};

TauTerms tau_of(const Model& model, const Wavenumber& k);

// lambda_p = (tau + (-1)^{p-1} i sqrt(1 - tau^2)) e^{i delta/2}
std::pair<std::complex<double>, std::complex<double>> eigenvalues(const Model& model,
                                                                  const Wavenumber& k);

inline constexpr double kSpectralDegeneracyTolerance = 1e-12;

struct EigenSystem {
  std::complex<double> lambda_1;
  std::complex<double> lambda_2;
  Spinor vec_1;
  Spinor vec_2;
};

// Throws DegeneracyError when 1 - tau^2 <= 1e-12.
EigenSystem eigensystem(const Model& model, const Wavenumber& k);

// v_{p,q} = i lambda_p^{-1} d lambda_p / d k_q, closed form. p in {1, 2}.
VelocityPoint group_velocity(const Model& model, int p, const Wavenumber& k);

// Fourier transform of a finitely supported state,
// psi_hat(k) = sum_x e^{-i k.x} psi(x).
class InitialSpectrum {
 public:
  explicit InitialSpectrum(std::vector<SiteAmplitude> sites);

  Spinor operator()(const Wavenumber& k) const;
  const std::vector<SiteAmplitude>& sites() const { return sites_; }

 private:
  std::vector<SiteAmplitude> sites_;
};

InitialSpectrum fourier_initial(const LatticeState& state);

// |<psi_hat(k) | lambda_p(k)>|^2 for p = 1, 2.
std::pair<double, double> band_weights(const EigenSystem& es, const Spinor& psi_hat);

// U_hat(k)^t psi_hat(k) through the eigendecomposition; by repeated squaring
// where the eigenvalue is repeated.
Spinor spectral_evolve(const Model& model, const InitialSpectrum& spectrum, std::int64_t t,
                       const Wavenumber& k);

// Inverse transform of spectral_evolve sampled on an n x n grid, evaluated on
// the lattice window |x_q| <= half_width. Exact when the support of psi_t fits
// in n consecutive sites per axis.
LatticeState spectral_lattice_state(const Model& model, const InitialSpectrum& spectrum,
                                    std::int64_t t, int grid_n, Window window);

struct CharFunctionValue {
  std::complex<double> value;
  std::int64_t skipped = 0;  // degenerate grid points left out
};

// Grid average over the torus of sum_p e^{i xi.v_p(k)} P_p(k).
CharFunctionValue numeric_char_function(const Model& model, const InitialSpectrum& spectrum,
                                        const Eigen::Vector2d& xi, int grid_n);

// Midpoint nodes of the uniform n-point grid on [-pi, pi).
std::vector<double> torus_nodes(int n);

}  // namespace qw2d
