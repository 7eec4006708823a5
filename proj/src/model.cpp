#include "qw2d/model.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "qw2d/angles.hpp"
#include "qw2d/errors.hpp"

namespace qw2d {

namespace {

void require_angle(double x, const char* name) {
  if (!std::isfinite(x)) {
    throw ParameterError(std::string("angle ") + name + " is not finite");
  }
}

}  // namespace

CoinParameters CoinParameters::from_squares(double a1_sq, double a2_sq,
                                            std::array<double, 2> alpha,
                                            std::array<double, 2> beta,
                                            std::array<double, 2> delta) {
  if (!(a1_sq > 0.0 && a1_sq < 1.0) || !(a2_sq > 0.0 && a2_sq < 1.0)) {
    throw ParameterError("|a_q|^2 must lie strictly inside (0, 1)");
  }
  return CoinParameters{{std::sqrt(a1_sq), std::sqrt(a2_sq)}, alpha, beta, delta};
}

int Model::index(int q) {
  if (q != 1 && q != 2) throw ParameterError("axis index must be 1 or 2");
  return q - 1;
}

DerivedConstants constants_from_ab(double a, double b) {
  DerivedConstants c;
  c.a = a;
  c.b = b;
  const double s = 1.0 - (a * a + b * b);
  // (1 - (a+b)^2)(1 - (a-b)^2) is the cancellation-free form.
  c.d_j = std::max(0.0, (1.0 - (a + b) * (a + b)) * (1.0 - (a - b) * (a - b)));
  c.degenerate = std::abs(a + b - 1.0) <= kDegeneracyTolerance;
  if (c.degenerate) c.d_j = 0.0;
  c.sqrt_d_j = std::sqrt(c.d_j);

  // j_+ via the larger-magnitude root and j_+ j_- = 1.
  c.j_minus = (-s - c.sqrt_d_j) / (2.0 * a * b);
  c.j_plus = 1.0 / c.j_minus;

  c.axis_r1 = 1.0 + a * a - b * b + c.sqrt_d_j;
  c.axis_r2 = 1.0 - a * a + b * b - c.sqrt_d_j;
  c.axis_t1 = 1.0 + a * a - b * b - c.sqrt_d_j;
  c.axis_t2 = 1.0 - a * a + b * b + c.sqrt_d_j;
  return c;
}

Model::Model(const CoinParameters& params) : params_(params) {
  for (int i = 0; i < 2; ++i) {
    const double m = params.modulus_a[i];
    if (!(m > 0.0 && m < 1.0)) {
      throw ParameterError("coin modulus |a_" + std::to_string(i + 1) +
                           "| must lie strictly inside (0, 1)");
    }
    require_angle(params.alpha[i], "alpha");
    require_angle(params.beta[i], "beta");
    require_angle(params.delta[i], "delta");
    params_.alpha[i] = reduce_angle(params.alpha[i]);
    params_.beta[i] = reduce_angle(params.beta[i]);
    params_.delta[i] = reduce_angle(params.delta[i]);
    modulus_b_[i] = std::sqrt((1.0 - m) * (1.0 + m));
  }

  for (int i = 0; i < 2; ++i) {
    const std::complex<double> aq = std::polar(params_.modulus_a[i], params_.alpha[i]);
    const std::complex<double> bq = std::polar(modulus_b_[i], params_.beta[i]);
    const std::complex<double> g = std::polar(1.0, 0.5 * params_.delta[i]);
    Eigen::Matrix2cd c;
    c << aq, bq, -std::conj(bq), std::conj(aq);
    coins_[i] = g * c;
  }

  const double a = params_.modulus_a[0] * params_.modulus_a[1];
  const double b = modulus_b_[0] * modulus_b_[1];
  constants_ = constants_from_ab(a, b);
  constants_.delta = reduce_angle(params_.delta[0] + params_.delta[1]);

  const double al = params_.alpha[1] + params_.alpha[0];
  const double be = params_.beta[1] - params_.beta[0];
  constants_.phi_1 = 0.5 * (al - be);
  constants_.phi_2 = 0.5 * (al + be);
}

Model build_model(const CoinParameters& params) { return Model(params); }

DerivedConstants derived_constants(const Model& model) { return model.constants(); }

}  // namespace qw2d
