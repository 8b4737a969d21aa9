#include "sqpeg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

#include "sqpeg/error.hpp"

namespace sqpeg {

namespace {

constexpr double kNonplanarThreshold = 1e-6;
constexpr double kOnSlqTolerance = 1e-8;

void require_wide_ellipse(double a, double b) {
  if (!(b > 0.0) || !(a > b))
    throw Error(ErrorKind::InvalidArgument, "ellipse square needs a > b > 0");
}

Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

Config4 relabel_power(Config4 c, int power) {
  for (int i = 0; i < ((power % 4) + 4) % 4; ++i) c = cyclic_relabel(c);
  return c;
}

Variation4 pushforward_power(Variation4 h, int power) {
  for (int i = 0; i < ((power % 4) + 4) % 4; ++i) h = cyclic_pushforward(h);
  return h;
}

// Component of `target` orthogonal to span{u, w} (two Gram-Schmidt passes).
Vec normal_component(const Vec& u, const Vec& w, const Vec& target) {
  Vec e1 = u.normalized();
  Vec e2 = w - e1 * e1.dot(w);
  e2 -= e1 * e1.dot(e2);
  e2.normalize();
  Vec n = target;
  for (int pass = 0; pass < 2; ++pass) {
    n -= e1 * e1.dot(n);
    n -= e2 * e2.dot(n);
  }
  return n;
}

// Vertex `at` moves along the part of (p_from - p_at) normal to the plane
// through p_at and the two `span` vertices, scaled so the derivative of
// |p_from - p_at| is  -(p_from - p_at).v / |p_from - p_at| = target.
Variation4 normal_motion(const Config4& c, int at, int span_a, int span_b, int from,
                         double target) {
  const Vec& p = c.point(at);
  const Vec n = normal_component(c.point(span_a) - p, c.point(span_b) - p, c.point(from) - p);
  // D|p_from - p_at| along v (moving p_at) is -(p_from - p_at).v / d.
  const double d = c.distance(from, at);
  const double alpha = -target * d / n.squaredNorm();
  return Variation4::single(c.dim(), at, alpha * n);
}

Eigen::MatrixXd random_rotation(int k, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd m(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ();
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  return q;
}

Config4 rigid_motion(const Config4& c, int k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> scale_dist(0.1, 10.0);
  std::uniform_real_distribution<double> shift_dist(-5.0, 5.0);
  const Eigen::MatrixXd rot = random_rotation(k, rng);
  const double scale = scale_dist(rng);
  Vec shift(k);
  for (int i = 0; i < k; ++i) shift[i] = shift_dist(rng);
  std::array<Vec, 4> out;
  for (int i = 0; i < 4; ++i) {
    Vec p = Vec::Zero(k);
    p.head(c.dim()) = c.point(i);
    out[i] = scale * (rot * p) + shift;
  }
  return Config4(out);
}

Config4 square_with(double stretch_diag13, double aspect) {
  // Square with diagonals on the axes; stretch_diag13 scales p1, p3 along
  // their diagonal, aspect turns the unit square into a rectangle.
  if (aspect != 1.0)
    return Config4({vec2(0, 0), vec2(aspect, 0), vec2(aspect, 1), vec2(0, 1)});
  return Config4({vec2(stretch_diag13, 0), vec2(0, 1), vec2(-stretch_diag13, 0), vec2(0, -1)});
}

Config4 stretched_bent_rhombus(double h, double stretch) {
  const Config4 base = make_bent_rhombus(h);
  return Config4({base.point(0) * stretch, base.point(1), base.point(2) * stretch, base.point(3)});
}

}  // namespace

Config4 ellipse_square(double a, double b) {
  require_wide_ellipse(a, b);
  const double s = a * b / std::sqrt(a * a + b * b);
  return Config4({vec2(s, s), vec2(-s, s), vec2(-s, -s), vec2(s, -s)});
}

Angles4 ellipse_square_angles(double a, double b) {
  require_wide_ellipse(a, b);
  const double t = std::atan2(a, b);  // cos t = b / sqrt(a^2 + b^2)
  return {t, std::numbers::pi - t, std::numbers::pi + t, kTwoPi - t};
}

EllipseBasis ellipse_basis(double a, double b) {
  const Angles4 theta = ellipse_square_angles(a, b);
  EllipseBasis basis;
  for (int i = 0; i < 4; ++i)
    basis.h[i] = Variation4::single(2, i, vec2(-a * std::sin(theta[i]), b * std::cos(theta[i])));
  return basis;
}

Eigen::Matrix4d ellipse_dg_matrix(double a, double b) {
  return mu_pushforward_dg_matrix(a, b, 0);
}

Eigen::Matrix4d mu_pushforward_dg_matrix(double a, double b, int power) {
  const Config4 square = relabel_power(ellipse_square(a, b), power);
  const EllipseBasis basis = ellipse_basis(a, b);
  Eigen::Matrix4d out;
  for (int i = 0; i < 4; ++i)
    out.col(i) = g_directional_derivative(square, pushforward_power(basis.h[i], power));
  return out;
}

NonplanarBasis nonplanar_basis(const Config4& c) {
  if ((g_map(c) - kSlqTarget).cwiseAbs().maxCoeff() > kOnSlqTolerance)
    throw Error(ErrorKind::NotOnSlq, "configuration is not square-like within 1e-8");
  const QuadMeasurements m = measurements(c);
  if (!(m.planarity > kNonplanarThreshold))
    throw Error(ErrorKind::PlanarConfiguration,
                "planarity " + std::to_string(m.planarity) + " is not above 1e-6");
  const double l = m.side;
  const double diag = m.diagonal;

  NonplanarBasis basis;
  basis.h[0] = normal_motion(c, 0, 1, 2, 3, -l / 2.0);            // v1 _|_ (p1 p2 p3)
  basis.h[1] = normal_motion(c, 2, 0, 3, 1, l / 2.0);             // v3 _|_ (p1 p3 p4)
  basis.h[2] = normal_motion(c, 3, 0, 1, 2, l / 2.0);             // v4 _|_ (p1 p2 p4)
  basis.h[3] = normal_motion(c, 2, 1, 3, 0, l * l / (2.0 * diag)); // w  _|_ (p2 p3 p4)
  return basis;
}

Eigen::Matrix4d nonplanar_dg_matrix(const Config4& c) {
  return nonplanar_pushforward_dg_matrix(c, 0);
}

Eigen::Matrix4d nonplanar_pushforward_dg_matrix(const Config4& c, int power) {
  const NonplanarBasis basis = nonplanar_basis(c);
  const Config4 moved = relabel_power(c, power);
  Eigen::Matrix4d out;
  for (int i = 0; i < 4; ++i)
    out.col(i) = g_directional_derivative(moved, pushforward_power(basis.h[i], power));
  return out;
}

EquivalenceReport equivalence_harness(int trials, std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "equivalence harness needs trials >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> height(0.05, 2.0);
  std::uniform_real_distribution<double> violation(1e-2, 1e-1);

  EquivalenceReport rep;
  rep.trials = trials;
  rep.min_g_residual_off_slq = std::numeric_limits<double>::infinity();
  rep.min_f_residual_off_slq = std::numeric_limits<double>::infinity();
  rep.min_violation = std::numeric_limits<double>::infinity();

  for (int t = 0; t < trials; ++t) {
    Config4 on;
    switch (t % 3) {
      case 0: on = rigid_motion(square_with(1.0, 1.0), 2, rng); break;
      case 1: on = rigid_motion(square_with(1.0, 1.0), 3, rng); break;
      default: on = rigid_motion(make_bent_rhombus(height(rng)), 3, rng); break;
    }
    rep.max_g_residual_on_slq =
        std::max(rep.max_g_residual_on_slq, (g_map(on) - kSlqTarget).norm());
    rep.max_f_residual_on_slq = std::max(rep.max_f_residual_on_slq, f_map(on).norm());

    const double delta = violation(rng);
    rep.min_violation = std::min(rep.min_violation, delta);
    Config4 off;
    switch (t % 3) {
      case 0: off = rigid_motion(square_with(1.0 + delta, 1.0), 2 + (t / 3) % 2, rng); break;
      case 1: off = rigid_motion(square_with(1.0, 1.0 + delta), 2 + (t / 3) % 2, rng); break;
      default: off = rigid_motion(stretched_bent_rhombus(height(rng), 1.0 + delta), 3, rng); break;
    }
    rep.min_g_residual_off_slq =
        std::min(rep.min_g_residual_off_slq, (g_map(off) - kSlqTarget).norm());
    rep.min_f_residual_off_slq = std::min(rep.min_f_residual_off_slq, f_map(off).norm());
  }
  rep.passed = rep.max_g_residual_on_slq < kEquivalenceOnTolerance &&
               rep.max_f_residual_on_slq < kEquivalenceOnTolerance &&
               rep.min_g_residual_off_slq > kEquivalenceOffTolerance &&
               rep.min_f_residual_off_slq > kEquivalenceOffTolerance;
  return rep;
}

}  // namespace sqpeg
