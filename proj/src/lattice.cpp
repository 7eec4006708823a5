#include "qw2d/lattice.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>

#include "qw2d/csv.hpp"
#include "qw2d/errors.hpp"

namespace qw2d {

LatticeState::LatticeState(Window window, Eigen::ArrayXXcd c1, Eigen::ArrayXXcd c2,
                           std::int64_t time)
    : window_(window), c1_(std::move(c1)), c2_(std::move(c2)), time_(time) {
  if (c1_.rows() != window_.rows() || c1_.cols() != window_.cols() ||
      c2_.rows() != window_.rows() || c2_.cols() != window_.cols()) {
    throw ParameterError("component planes do not match the window");
  }
  if (time_ < 0) throw ParameterError("time must be nonnegative");
}

Spinor LatticeState::at(int x1, int x2) const {
  if (!window_.contains(x1, x2)) return Spinor::Zero();
  const int i = x1 - window_.x1_min;
  const int j = x2 - window_.x2_min;
  return Spinor(c1_(i, j), c2_(i, j));
}

double LatticeState::norm_squared() const {
  return c1_.abs2().sum() + c2_.abs2().sum();
}

LatticeState initial_state_delta(const Spinor& spinor) {
  if (std::abs(spinor.norm() - 1.0) > kUnitSpinorTolerance) {
    throw ParameterError("initial spinor must have unit norm");
  }
  Eigen::ArrayXXcd c1(1, 1), c2(1, 1);
  c1(0, 0) = spinor(0);
  c2(0, 0) = spinor(1);
  return LatticeState(Window{}, std::move(c1), std::move(c2), 0);
}

LatticeState initial_state(const std::vector<SiteAmplitude>& sites) {
  if (sites.empty()) throw ParameterError("initial state needs at least one site");
  Window w{sites.front().x1, sites.front().x1, sites.front().x2, sites.front().x2};
  for (const auto& s : sites) {
    w.x1_min = std::min(w.x1_min, s.x1);
    w.x1_max = std::max(w.x1_max, s.x1);
    w.x2_min = std::min(w.x2_min, s.x2);
    w.x2_max = std::max(w.x2_max, s.x2);
  }
  Eigen::ArrayXXcd c1 = Eigen::ArrayXXcd::Zero(w.rows(), w.cols());
  Eigen::ArrayXXcd c2 = Eigen::ArrayXXcd::Zero(w.rows(), w.cols());
  for (const auto& s : sites) {
    c1(s.x1 - w.x1_min, s.x2 - w.x2_min) += s.value(0);
    c2(s.x1 - w.x1_min, s.x2 - w.x2_min) += s.value(1);
  }
  LatticeState state(w, std::move(c1), std::move(c2), 0);
  if (std::abs(state.norm_squared() - 1.0) > kUnitSpinorTolerance) {
    throw ParameterError("initial state must have unit norm");
  }
  return state;
}

LatticeState apply_coin(const Model& model, const LatticeState& state, int q) {
  const Eigen::Matrix2cd& c = model.coin(q);
  Eigen::ArrayXXcd n1 = c(0, 0) * state.c1_ + c(0, 1) * state.c2_;
  Eigen::ArrayXXcd n2 = c(1, 0) * state.c1_ + c(1, 1) * state.c2_;
  return LatticeState(state.window_, std::move(n1), std::move(n2), state.time_);
}

LatticeState apply_shift(const LatticeState& state, int q) {
  if (q != 1 && q != 2) throw ParameterError("axis index must be 1 or 2");
  Window w = state.window_;
  const Eigen::Index r = state.c1_.rows();
  const Eigen::Index c = state.c1_.cols();
  if (q == 1) {
    w.x1_min -= 1;
    w.x1_max += 1;
    Eigen::ArrayXXcd n1 = Eigen::ArrayXXcd::Zero(r + 2, c);
    Eigen::ArrayXXcd n2 = Eigen::ArrayXXcd::Zero(r + 2, c);
    // Component 1 at x is pulled from x + e_1, component 2 from x - e_1.
    n1.topRows(r) = state.c1_;
    n2.bottomRows(r) = state.c2_;
    return LatticeState(w, std::move(n1), std::move(n2), state.time_);
  }
  w.x2_min -= 1;
  w.x2_max += 1;
  Eigen::ArrayXXcd n1 = Eigen::ArrayXXcd::Zero(r, c + 2);
  Eigen::ArrayXXcd n2 = Eigen::ArrayXXcd::Zero(r, c + 2);
  n1.leftCols(c) = state.c1_;
  n2.rightCols(c) = state.c2_;
  return LatticeState(w, std::move(n1), std::move(n2), state.time_);
}

LatticeState step(const Model& model, const LatticeState& state) {
  LatticeState s = apply_coin(model, state, 1);
  s = apply_shift(s, 1);
  s = apply_coin(model, s, 2);
  s = apply_shift(s, 2);
  s.time_ = state.time_ + 1;
  return s;
}

LatticeState evolve(const Model& model, LatticeState state, std::int64_t steps) {
  if (steps < 0) throw ParameterError("step count must be nonnegative");
  for (std::int64_t i = 0; i < steps; ++i) state = step(model, state);
  return state;
}

PositionDistribution::PositionDistribution(Window window, Eigen::ArrayXXd weights,
                                           std::int64_t time)
    : window_(window), weights_(std::move(weights)), time_(time) {}

double PositionDistribution::at(int x1, int x2) const {
  if (!window_.contains(x1, x2)) return 0.0;
  return weights_(x1 - window_.x1_min, x2 - window_.x2_min);
}

PositionDistribution position_distribution(const LatticeState& state) {
  Eigen::ArrayXXd w = state.component1().abs2() + state.component2().abs2();
  return PositionDistribution(state.window(), std::move(w), state.time());
}

MomentSummary moments(const PositionDistribution& dist, std::int64_t t) {
  if (t <= 0) throw ParameterError("moments need t >= 1");
  const double inv_t = 1.0 / static_cast<double>(t);
  const Window& w = dist.window();
  MomentSummary m;
  for (int i = 0; i < w.rows(); ++i) {
    const double v1 = (w.x1_min + i) * inv_t;
    for (int j = 0; j < w.cols(); ++j) {
      const double p = dist.weights()(i, j);
      if (p == 0.0) continue;
      const double v2 = (w.x2_min + j) * inv_t;
      m.mean += p * Eigen::Vector2d(v1, v2);
      m.second(0, 0) += p * v1 * v1;
      m.second(0, 1) += p * v1 * v2;
      m.second(1, 1) += p * v2 * v2;
    }
  }
  m.second(1, 0) = m.second(0, 1);
  return m;
}

void write_distribution_csv(std::ostream& out, const PositionDistribution& dist) {
  out << "x1,x2,probability\n";
  const Window& w = dist.window();
  for (int i = 0; i < w.rows(); ++i) {
    for (int j = 0; j < w.cols(); ++j) {
      const double p = dist.weights()(i, j);
      if (p == 0.0) continue;
      out << (w.x1_min + i) << ',' << (w.x2_min + j) << ',' << format_double(p) << '\n';
    }
  }
}

namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
  static_assert(std::endian::native == std::endian::little ||
                    std::endian::native == std::endian::big,
                "mixed-endian platforms are not supported");
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  }
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) {
    throw ParameterError("truncated amplitude dump");
  }
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  }
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_amplitudes_binary(std::ostream& out, const LatticeState& state) {
  const Window& w = state.window();
  put_le<std::int32_t>(out, w.x1_min);
  put_le<std::int32_t>(out, w.x1_max);
  put_le<std::int32_t>(out, w.x2_min);
  put_le<std::int32_t>(out, w.x2_max);
  for (int i = 0; i < w.rows(); ++i) {
    for (int j = 0; j < w.cols(); ++j) {
      const auto a = state.component1()(i, j);
      const auto b = state.component2()(i, j);
      put_le<double>(out, a.real());
      put_le<double>(out, a.imag());
      put_le<double>(out, b.real());
      put_le<double>(out, b.imag());
    }
  }
}

LatticeState read_amplitudes_binary(std::istream& in) {
  Window w;
  w.x1_min = get_le<std::int32_t>(in);
  w.x1_max = get_le<std::int32_t>(in);
  w.x2_min = get_le<std::int32_t>(in);
  w.x2_max = get_le<std::int32_t>(in);
  if (w.x1_max < w.x1_min || w.x2_max < w.x2_min) {
    throw ParameterError("invalid window in amplitude dump");
  }
  Eigen::ArrayXXcd c1(w.rows(), w.cols()), c2(w.rows(), w.cols());
  for (int i = 0; i < w.rows(); ++i) {
    for (int j = 0; j < w.cols(); ++j) {
      const double ar = get_le<double>(in);
      const double ai = get_le<double>(in);
      const double br = get_le<double>(in);
      const double bi = get_le<double>(in);
      c1(i, j) = {ar, ai};
      c2(i, j) = {br, bi};
    }
  }
  return LatticeState(w, std::move(c1), std::move(c2), 0);
}

}  // namespace qw2d
