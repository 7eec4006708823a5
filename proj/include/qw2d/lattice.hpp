#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "qw2d/model.hpp"

namespace qw2d {

using Spinor = Eigen::Vector2cd;

// Inclusive rectangle of lattice sites.
struct Window {
  int x1_min = 0;
  int x1_max = 0;
  int x2_min = 0;
  int x2_max = 0;

  int rows() const { return x1_max - x1_min + 1; }
  int cols() const { return x2_max - x2_min + 1; }
  bool contains(int x1, int x2) const {
    return x1 >= x1_min && x1 <= x1_max && x2 >= x2_min && x2 <= x2_max;
  }
};

// Finitely supported two-component field on Z^2. Component planes are dense
// over the window; row index runs along x1, column index along x2.
class LatticeState {
 public:
  LatticeState(Window window, Eigen::ArrayXXcd c1, Eigen::ArrayXXcd c2, std::int64_t time);

  const Window& window() const { return window_; }
  std::int64_t time() const { return time_; }
  const Eigen::ArrayXXcd& component1() const { return c1_; }
  const Eigen::ArrayXXcd& component2() const { return c2_; }

  // Zero outside the window.
  Spinor at(int x1, int x2) const;
  double norm_squared() const;

 private:
  friend LatticeState apply_coin(const Model&, const LatticeState&, int);
  friend LatticeState apply_shift(const LatticeState&, int);
  friend LatticeState step(const Model&, const LatticeState&);

  Window window_;
  Eigen::ArrayXXcd c1_;
  Eigen::ArrayXXcd c2_;
  std::int64_t time_ = 0;
};

struct SiteAmplitude {
  int x1 = 0;
  int x2 = 0;
  Spinor value = Spinor::Zero();
};

inline constexpr double kUnitSpinorTolerance = 1e-12;

// Throws ParameterError unless the spinor has unit norm.
LatticeState initial_state_delta(const Spinor& spinor);

// General finitely supported initial state; the total norm must be 1.
LatticeState initial_state(const std::vector<SiteAmplitude>& sites);

LatticeState apply_coin(const Model& model, const LatticeState& state, int q);

// (S_q psi)(x) = (psi_1(x + e_q), psi_2(x - e_q)). The window grows by one
// site on both sides along axis q.
LatticeState apply_shift(const LatticeState& state, int q);

// U = S_2 C_2 S_1 C_1, applied in that order.
LatticeState step(const Model& model, const LatticeState& state);
LatticeState evolve(const Model& model, LatticeState state, std::int64_t steps);

class PositionDistribution {
 public:
  PositionDistribution(Window window, Eigen::ArrayXXd weights, std::int64_t time);

  const Window& window() const { return window_; }
  const Eigen::ArrayXXd& weights() const { return weights_; }
  std::int64_t time() const { return time_; }

  double at(int x1, int x2) const;
  double total() const { return weights_.sum(); }

 private:
  Window window_;
  Eigen::ArrayXXd weights_;
  std::int64_t time_ = 0;
};

PositionDistribution position_distribution(const LatticeState& state);

// E[X/t] and E[(X/t)(X/t)^T].
struct MomentSummary {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d second = Eigen::Matrix2d::Zero();
};

// Throws ParameterError for t = 0.
MomentSummary moments(const PositionDistribution& dist, std::int64_t t);

// CSV rows "x1,x2,probability" for every site with nonzero weight, x1-major.
void write_distribution_csv(std::ostream& out, const PositionDistribution& dist);

// Little-endian: int32 x1_min, x1_max, x2_min, x2_max, then for each x1
// (outer) and x2 (inner) the float64 quadruple Re c1, Im c1, Re c2, Im c2.
void write_amplitudes_binary(std::ostream& out, const LatticeState& state);
LatticeState read_amplitudes_binary(std::istream& in);

}  // namespace qw2d
