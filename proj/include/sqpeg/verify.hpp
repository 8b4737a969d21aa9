#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Core>

#include "sqpeg/config.hpp"
#include "sqpeg/slq.hpp"

namespace sqpeg {

// Tangent motions of the ellipse square: h_i moves vertex i along the
// ellipse with velocity gamma'(theta_i) for gamma = (a cos t, b sin t).
struct EllipseBasis {
  std::array<Variation4, 4> h;
};

// Normal motions of a nonplanar square-like quadrilateral, scaled so that
//   h1: D|p1-p4| = -l/2,   h2: D|p2-p3| = l/2,
//   h3: D|p3-p4| =  l/2,   h4: D|p1-p3| = l^2/(2m),
// with every other pairwise length stationary to first order.
struct NonplanarBasis {
  std::array<Variation4, 4> h;
};

// Vertices (+-ab/sqrt(a^2+b^2), +-ab/sqrt(a^2+b^2)), counterclockwise from
// the first quadrant. Requires a > b > 0.
Config4 ellipse_square(double a, double b);

// Parameter angles of ellipse_square on (a cos t, b sin t).
Angles4 ellipse_square_angles(double a, double b);

EllipseBasis ellipse_basis(double a, double b);

// Dg on the ellipse basis; det = 8 (a^4 - b^4) / (a^2 b^2).
Eigen::Matrix4d ellipse_dg_matrix(double a, double b);

// Dg at mu^power(square) on the pushed-forward basis.
Eigen::Matrix4d mu_pushforward_dg_matrix(double a, double b, int power = 1);

// Throws NotOnSlq, PlanarConfiguration (planarity <= 1e-6).
NonplanarBasis nonplanar_basis(const Config4& c);
Eigen::Matrix4d nonplanar_dg_matrix(const Config4& c);
Eigen::Matrix4d nonplanar_pushforward_dg_matrix(const Config4& c, int power = 1);

struct EquivalenceReport {
  int trials = 0;
  double max_g_residual_on_slq = 0.0;   // |g - (1,1,1,0)| over square-like samples
  double max_f_residual_on_slq = 0.0;   // |f|
  double min_g_residual_off_slq = 0.0;  // over one-condition violations
  double min_f_residual_off_slq = 0.0;
  double min_violation = 0.0;           // smallest violation size used
  bool passed = false;
};

inline constexpr double kEquivalenceOnTolerance = 1e-10;
inline constexpr double kEquivalenceOffTolerance = 1e-4;

// trials square-like quadrilaterals (rigidly moved planar squares in R^2
// and R^3, bent rhombi in R^3) and trials one-condition violations of
// relative size in [1e-2, 1e-1]. Throws InvalidArgument for trials < 1.
EquivalenceReport equivalence_harness(int trials, std::uint64_t seed);

}  // namespace sqpeg
