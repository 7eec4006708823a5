#pragma once

#include <array>

#include <Eigen/Core>

namespace qw2d {

// Raw coin parameters for the two alternating coins. Moduli |a_q| and phases
// are stored instead of complex entries so that |a_q|^2 + |b_q|^2 = 1 and
// det C_{0,q} = e^{i delta_q} hold by construction.
struct CoinParameters {
  std::array<double, 2> modulus_a{};  // |a_1|, |a_2|, each in (0, 1)
  std::array<double, 2> alpha{};      // arg a_q
  std::array<double, 2> beta{};       // arg b_q
  std::array<double, 2> delta{};      // det C_{0,q} = e^{i delta_q}

  // Convenience for the config-file form, which carries |a_q|^2.
  static CoinParameters from_squares(double a1_sq, double a2_sq,
                                     std::array<double, 2> alpha = {},
                                     std::array<double, 2> beta = {},
                                     std::array<double, 2> delta = {});
};

struct DerivedConstants {
  double a = 0.0;  // |a_1||a_2|
  double b = 0.0;  // |b_1||b_2|
  double delta = 0.0;
  double d_j = 0.0;  // discriminant of phi(x) = ab x^2 + (1 - a^2 - b^2) x + ab
  double sqrt_d_j = 0.0;
  double j_plus = 0.0;
  double j_minus = 0.0;
  // Squared semi-axes (in u coordinates) of the two bounding ellipses:
  // ribbon ellipse u1^2/axis_r1 + u2^2/axis_r2 <= 1 and twist ellipse
  // u1^2/axis_t1 + u2^2/axis_t2 <= 1.
  double axis_r1 = 0.0;
  double axis_r2 = 0.0;
  double axis_t1 = 0.0;
  double axis_t2 = 0.0;
  double phi_1 = 0.0;
  double phi_2 = 0.0;
  bool degenerate = false;  // a + b = 1
};

inline constexpr double kDegeneracyTolerance = 1e-12;

class Model {
 public:
  // Throws ParameterError for moduli outside (0, 1) or non-finite angles.
  explicit Model(const CoinParameters& params);

  const CoinParameters& params() const { return params_; }
  const DerivedConstants& constants() const { return constants_; }

  double modulus_a(int q) const { return params_.modulus_a[index(q)]; }
  double modulus_b(int q) const { return modulus_b_[index(q)]; }

  // C_{0,q} = e^{i delta_q/2} [[a_q, b_q], [-b_q^*, a_q^*]] for q in {1, 2}.
  const Eigen::Matrix2cd& coin(int q) const { return coins_[index(q)]; }

 private:
  static int index(int q);

  CoinParameters params_;
  std::array<double, 2> modulus_b_{};
  std::array<Eigen::Matrix2cd, 2> coins_;
  DerivedConstants constants_;
};

Model build_model(const CoinParameters& params);
DerivedConstants derived_constants(const Model& model);

// Constants from (a, b) alone; exposed for the identities the tests sweep.
DerivedConstants constants_from_ab(double a, double b);

}  // namespace qw2d
