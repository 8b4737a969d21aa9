#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Core>

namespace sqpeg {

// Ambient dimension cap. Points keep their coordinates inline so the
// Newton inner loop never touches the heap.
inline constexpr int kMaxDim = 16;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

// Four curve parameters, one per labeled point.
using Angles4 = std::array<double, 4>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Reduce an angle to [0, 2pi).
inline double wrap_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

// Distance between two angles on the circle, in [0, pi].
inline double circular_distance(double a, double b) {
  const double d = std::fabs(wrap_angle(a) - wrap_angle(b));
  return d > std::numbers::pi ? kTwoPi - d : d;
}

}  // namespace sqpeg
