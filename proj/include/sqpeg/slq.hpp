#pragma once

#include <array>

#include <Eigen/Core>

#include "sqpeg/config.hpp"

namespace sqpeg {

// First-order motion of a Config4: one tangent vector per point.
struct Variation4 {
  std::array<Vec, 4> v;

  static Variation4 zero(int dim);
  // Only point `index` (0-based) moves, with velocity `velocity`.
  static Variation4 single(int dim, int index, const Vec& velocity);
};

// (p1,p2,p3,p4) velocities -> (v2,v3,v4,v1), the differential of the
// cyclic relabeling.
Variation4 cyclic_pushforward(const Variation4& h);

struct QuadMeasurements {
  std::array<double, 4> sides{};      // |p1p2|, |p2p3|, |p3p4|, |p4p1|
  std::array<double, 2> diagonals{};  // |p1p3|, |p2p4|
  double side = 0.0;                  // mean side
  double diagonal = 0.0;              // mean diagonal
  double planarity = 0.0;             // sigma_3 / sigma_1 of the edge matrix, 0 for k = 2
};

// Below this relative planarity a quadrilateral counts as planar.
inline constexpr double kPlanarityThreshold = 1e-8;

// Squared-ratio map (r124^2, r231^2, r342^2, r132^2 - r241^2); the
// square-like locus is g = (1, 1, 1, 0). Throws DegenerateConfiguration.
Eigen::Vector4d g_map(const Config4& c);

// Dot-product map ((pi14+pi34).pi13, (pi41+pi21).pi24, pi13.pi24,
// r132^2 - r241^2); vanishes exactly on square-like quadrilaterals.
Eigen::Vector4d f_map(const Config4& c);

inline const Eigen::Vector4d kSlqTarget{1.0, 1.0, 1.0, 0.0};

// D_h |p_i - p_j| = (p_i - p_j).(v_i - v_j) / |p_i - p_j|, 0-based indices.
double length_derivative(const Config4& c, const Variation4& h, int i, int j);

// Column of Dg along h using the form simplified with equal sides and
// diagonals; only valid on the square-like locus. Throws NotOnSlq when
// |g - (1,1,1,0)|_inf > 1e-8, DegenerateConfiguration on collisions.
Eigen::Vector4d g_directional_derivative(const Config4& c, const Variation4& h);

// Boundary data on the (13)(24) face: p1 = p3 = q1, p2 = p4 = q2, with
// limiting diagonal directions u13, u24.
struct CollapsedPairs {
  Vec q1;
  Vec q2;
  Vec u13;
  Vec u24;
};

// (2 pi14.u13, 2 pi41.u24, u13.u24) with pi14 = (q1 - q2)/|q1 - q2|.
Eigen::Vector3d f_hat(const CollapsedPairs& collapsed);

// p1 = (1,0,0), p2 = (0,1,h), p3 = (-1,0,0), p4 = (0,-1,h).
Config4 make_bent_rhombus(double h);

QuadMeasurements measurements(const Config4& c);

}  // namespace sqpeg
