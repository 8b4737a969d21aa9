#pragma once

// Finite-difference reference for dG/dtheta. G is re-evaluated in long
// double straight from the Fourier coefficients (no library code beyond
// the coefficient accessors), and central differences are Richardson
// extrapolated with a step scaled to the smallest vertex gap. Near the
// separation guard the Jacobian reaches ~1e7, where a plain double
// central difference cannot resolve 1e-5.

#include <algorithm>
#include <cmath>

#include <Eigen/Core>

#include "sqpeg/curve.hpp"

namespace testing_support {

using LVec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

inline LVec eval_ld(const sqpeg::Curve& c, long double th) {
  LVec p(c.dim());
  for (int d = 0; d < c.dim(); ++d) {
    const auto& co = c.coords()[d];
    long double x = co.a0;
    for (int h = 0; h < c.harmonics(); ++h)
      x += co.cos[h] * std::cos((h + 1) * th) + co.sin[h] * std::sin((h + 1) * th);
    p[d] = x;
  }
  return p;
}

inline Eigen::Matrix<long double, 4, 1> residual_ld(const sqpeg::Curve& c, const std::array<long double, 4>& th) {
  LVec p[4];
  for (int i = 0; i < 4; ++i) p[i] = eval_ld(c, th[i]);
  auto s = [&](int i, int j) { return (p[i] - p[j]).squaredNorm(); };
  Eigen::Matrix<long double, 4, 1> g;
  g << s(0, 1) / s(0, 3) - 1, s(1, 2) / s(0, 1) - 1, s(2, 3) / s(1, 2) - 1, (s(0, 2) - s(1, 3)) / s(0, 1);
  return g;
}

inline Eigen::Matrix4d fd_jacobian_reference(const sqpeg::Curve& c, const sqpeg::Angles4& theta) {
  std::array<long double, 4> th;
  double gap = 1e300, speed = 0;
  for (int i = 0; i < 4; ++i) {
    th[i] = theta[i];
    speed = std::max(speed, c.deriv(theta[i]).norm());
    for (int j = i + 1; j < 4; ++j) gap = std::min(gap, (c.eval(theta[i]) - c.eval(theta[j])).norm());
  }
  const long double h = 1e-4L * gap / speed;
  auto central = [&](int m, long double step) {
    auto p = th, q = th;
    p[m] += step;
    q[m] -= step;
    return Eigen::Matrix<long double, 4, 1>((residual_ld(c, p) - residual_ld(c, q)) / (2 * step));
  };
  Eigen::Matrix4d out;
  for (int m = 0; m < 4; ++m) {
    const Eigen::Matrix<long double, 4, 1> r = (4 * central(m, h / 2) - central(m, h)) / 3;
    out.col(m) = r.cast<double>();
  }
  return out;
}

}  // namespace testing_support
