#pragma once

#include <cmath>
#include <numbers>

namespace qw2d {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Canonical reduction onto [-pi, pi).
inline double reduce_angle(double x) {
  double r = std::fmod(x + kPi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  r -= kPi;
  // fmod can land exactly on +pi after the shift back.
  if (r >= kPi) r -= kTwoPi;
  return r;
}

// Distance between two angles on the circle, in [0, pi].
inline double angular_distance(double x, double y) {
  return std::abs(reduce_angle(x - y));
}

}  // namespace qw2d
