#include "sqpeg/slq.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "sqpeg/error.hpp"

namespace sqpeg {

namespace {

constexpr double kOnSlqTolerance = 1e-8;

void require_nondegenerate(const Config4& c, const char* who) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (!(c.distance(i, j) > 0.0))
        throw Error(ErrorKind::DegenerateConfiguration,
                    std::string(who) + ": p" + std::to_string(i + 1) + " and p" +
                        std::to_string(j + 1) + " coincide");
}

}  // namespace

Variation4 Variation4::zero(int dim) {
  Variation4 h;
  for (auto& v : h.v) v = Vec::Zero(dim);
  return h;
}

Variation4 Variation4::single(int dim, int index, const Vec& velocity) {
  Variation4 h = zero(dim);
  h.v[index] = velocity;
  return h;
}

Variation4 cyclic_pushforward(const Variation4& h) {
  return Variation4{{h.v[1], h.v[2], h.v[3], h.v[0]}};
}

Eigen::Vector4d g_map(const Config4& c) {
  require_nondegenerate(c, "g_map");
  auto sq = [&c](int i, int j) { return c.distance(i, j) * c.distance(i, j); };
  return {sq(0, 1) / sq(0, 3), sq(1, 2) / sq(1, 0), sq(2, 3) / sq(2, 1),
          sq(0, 2) / sq(0, 1) - sq(1, 3) / sq(1, 0)};
}

Eigen::Vector4d f_map(const Config4& c) {
  require_nondegenerate(c, "f_map");
  const Vec p13 = c.direction(0, 2);
  const Vec p24 = c.direction(1, 3);
  const Vec p14 = c.direction(0, 3);
  const Vec p34 = c.direction(2, 3);
  const Vec p41 = c.direction(3, 0);
  const Vec p21 = c.direction(1, 0);
  const double r132 = c.ratio(0, 2, 1);
  const double r241 = c.ratio(1, 3, 0);
  return {(p14 + p34).dot(p13), (p41 + p21).dot(p24), p13.dot(p24),
          r132 * r132 - r241 * r241};
}

double length_derivative(const Config4& c, const Variation4& h, int i, int j) {
  const double d = c.distance(i, j);
  if (!(d > 0.0))
    throw Error(ErrorKind::DegenerateConfiguration, "length derivative at a collision");
  return (c.point(i) - c.point(j)).dot(h.v[i] - h.v[j]) / d;
}

Eigen::Vector4d g_directional_derivative(const Config4& c, const Variation4& h) {
  const Eigen::Vector4d g = g_map(c);
  if ((g - kSlqTarget).cwiseAbs().maxCoeff() > kOnSlqTolerance)
    throw Error(ErrorKind::NotOnSlq, "configuration is not square-like within 1e-8");
  for (const auto& v : h.v)
    if (v.size() != c.dim())
      throw Error(ErrorKind::DimensionMismatch, "variation dimension differs from configuration");

  auto D = [&](int i, int j) { return length_derivative(c, h, i, j); };
  const double d12 = c.distance(0, 1);
  return {2.0 / c.distance(0, 3) * (D(0, 1) - D(0, 3)),
          2.0 / c.distance(1, 0) * (D(1, 2) - D(1, 0)),
          2.0 / c.distance(2, 1) * (D(2, 3) - D(2, 1)),
          2.0 / (d12 * d12) *
              (c.distance(0, 2) * D(0, 2) - c.distance(1, 3) * D(1, 3))};
}

Eigen::Vector3d f_hat(const CollapsedPairs& collapsed) {
  const Vec pi14 = direction(collapsed.q1, collapsed.q2);
  if (collapsed.u13.size() != pi14.size() || collapsed.u24.size() != pi14.size())
    throw Error(ErrorKind::DimensionMismatch, "f_hat: direction dimension mismatch");
  // pi41 = -pi14
  return {2.0 * pi14.dot(collapsed.u13), -2.0 * pi14.dot(collapsed.u24),
          collapsed.u13.dot(collapsed.u24)};
}

Config4 make_bent_rhombus(double h) {
  if (!(h >= 0.0)) throw Error(ErrorKind::InvalidArgument, "bent rhombus height must be >= 0");
  auto v = [](double x, double y, double z) {
    Vec p(3);
    p << x, y, z;
    return p;
  };
  return Config4({v(1, 0, 0), v(0, 1, h), v(-1, 0, 0), v(0, -1, h)});
}

QuadMeasurements measurements(const Config4& c) {
  QuadMeasurements m;
  m.sides = {c.distance(0, 1), c.distance(1, 2), c.distance(2, 3), c.distance(3, 0)};
  m.diagonals = {c.distance(0, 2), c.distance(1, 3)};
  m.side = (m.sides[0] + m.sides[1] + m.sides[2] + m.sides[3]) / 4.0;
  m.diagonal = (m.diagonals[0] + m.diagonals[1]) / 2.0;

  if (c.dim() >= 3) {
    Eigen::MatrixXd edges(3, c.dim());
    for (int r = 0; r < 3; ++r) edges.row(r) = (c.point(r + 1) - c.point(0)).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(edges);
    const auto& s = svd.singularValues();
    m.planarity = s[0] > 0.0 ? s[2] / s[0] : 0.0;
  }
  return m;
}

}  // namespace sqpeg
