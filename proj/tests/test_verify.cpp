#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sqpeg/error.hpp"
#include "sqpeg/slq.hpp"
#include "sqpeg/verify.hpp"
#include "test_support.hpp"

using namespace sqpeg;

namespace {

double det_formula(double a, double b) { return 8 * (a * a * a * a - b * b * b * b) / (a * a * b * b); }

Eigen::Matrix4d case1(double a, double b) {
  const double p = a / b, q = b / a;
  Eigen::Matrix4d m;
  m << -p - q, p, 0, q,
       p, -p - q, q, 0,
       0, q, -p - q, p,
       q - p, q - p, q - p, q - p;
  return m;
}

Eigen::Matrix4d nonplanar_expected() {
  Eigen::Matrix4d m;
  m << 1, 0, 0, 0,
       0, 1, 0, 0,
       0, -1, 1, 0,
       0, 0, 0, 1;
  return m;
}

Eigen::Matrix4d nonplanar_pushforward_expected() {
  Eigen::Matrix4d m;
  m << 0, 1, 0, 0,
       0, -1, 1, 0,
       -1, 0, -1, 0,
       0, 0, 0, -1;
  return m;
}

Config4 moved(const Config4& c, const Variation4& h, double t) {
  std::array<Vec, 4> p;
  for (int i = 0; i < 4; ++i) p[i] = c.point(i) + t * h.v[i];
  return Config4(p);
}

std::vector<std::pair<double, double>> sweep() {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ratio(1.0001, 10.0), scale(0.1, 10);
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i < 50; ++i) {
    const double b = scale(rng);
    out.emplace_back(b * ratio(rng), b);
  }
  return out;
}

}  // namespace

TEST(EllipseSquare, Vertices) {
  const Config4 c = ellipse_square(2, 1);
  const double s = 2 / std::sqrt(5.0);
  const double want[4][2] = {{s, s}, {-s, s}, {-s, -s}, {s, -s}};
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(c.point(i)[0], want[i][0], 1e-15);
    EXPECT_NEAR(c.point(i)[1], want[i][1], 1e-15);
  }
  EXPECT_NEAR(measurements(c).side, 4 / std::sqrt(5.0), 1e-15);
}

TEST(EllipseSquare, LiesOnEllipseAtStatedAngles) {
  const Curve e = make_ellipse(3, 2);
  const Config4 c = ellipse_square(3, 2);
  const Angles4 th = ellipse_square_angles(3, 2);
  for (int i = 0; i < 4; ++i) EXPECT_LT((e.eval(th[i]) - c.point(i)).norm(), 1e-14);
  EXPECT_LT((g_map(c) - kSlqTarget).norm(), 1e-12);
}

TEST(EllipseSquare, RejectsCircleAndBadOrder) {
  for (auto [a, b] : {std::pair{1.0, 1.0}, {1.0, 2.0}, {2.0, 0.0}}) {
    try {
      ellipse_square(a, b);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
    }
  }
}

TEST(EllipseSquare, ResidualsSweep) {
  for (auto [a, b] : sweep()) {
    const Config4 c = ellipse_square(a, b);
    EXPECT_LT((g_map(c) - kSlqTarget).norm(), 1e-12);
    EXPECT_LT(f_map(c).norm(), 1e-12);
    EXPECT_NEAR(measurements(c).side, 2 * a * b / std::hypot(a, b), 1e-12 * a);
  }
}

TEST(EllipseBasis, VelocityIsScaledTangent) {
  const double a = 2, b = 1, r = std::hypot(a, b);
  const EllipseBasis e = ellipse_basis(a, b);
  EXPECT_NEAR(e.h[0].v[0][0], -a * a / r, 1e-15);
  EXPECT_NEAR(e.h[0].v[0][1], b * b / r, 1e-15);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) EXPECT_EQ(e.h[i].v[j].norm(), 0.0);
}

TEST(EllipseDg, CaseOneMatrix) {
  for (auto [a, b] : {std::pair{2.0, 1.0}, {3.0, 2.0}, {10.0, 1.0}}) {
    const Eigen::Matrix4d m = ellipse_dg_matrix(a, b);
    EXPECT_LT((m - case1(a, b)).cwiseAbs().maxCoeff(), 1e-9);
  }
  EXPECT_NEAR(ellipse_dg_matrix(2, 1)(0, 0), -2.5, 1e-12);
  EXPECT_NEAR(ellipse_dg_matrix(2, 1)(3, 0), -2 + 0.5, 1e-12);
  EXPECT_NEAR(ellipse_dg_matrix(2, 1).determinant(), 30.0, 30e-9);
  EXPECT_NEAR(ellipse_dg_matrix(3, 2).determinant(), 130.0 / 9.0, 130e-9 / 9.0);
}

TEST(EllipseDg, DeterminantSweepPositive) {
  for (auto [a, b] : sweep()) {
    const double d = ellipse_dg_matrix(a, b).determinant();
    EXPECT_GT(d, 0.0);
    EXPECT_LT(std::abs(d - det_formula(a, b)) / det_formula(a, b), 1e-9) << a << " " << b;
  }
}

TEST(MuPushforward, EntryAndDeterminant) {
  const Eigen::Matrix4d m = mu_pushforward_dg_matrix(2, 1);
  EXPECT_NEAR(m(0, 0), 2.0, 1e-9);
  EXPECT_NEAR(m.determinant(), 30.0, 1e-9);
  for (auto [a, b] : sweep()) {
    const Eigen::Matrix4d x = mu_pushforward_dg_matrix(a, b);
    EXPECT_NEAR(x(0, 0), a / b, 1e-9 * a / b);
    EXPECT_LT(std::abs(x.determinant() - det_formula(a, b)) / det_formula(a, b), 1e-9);
  }
}

TEST(MuPushforward, FourthPowerIsIdentityAction) {
  for (auto [a, b] : {std::pair{2.0, 1.0}, {5.0, 3.0}}) {
    EXPECT_LT((mu_pushforward_dg_matrix(a, b, 4) - ellipse_dg_matrix(a, b)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((mu_pushforward_dg_matrix(a, b, 0) - ellipse_dg_matrix(a, b)).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Nonplanar, BentRhombusMatrix) {
  for (double h : {0.25, 0.5, 1.0, 3.0}) {
    const Eigen::Matrix4d m = nonplanar_dg_matrix(make_bent_rhombus(h));
    EXPECT_LT((m - nonplanar_expected()).cwiseAbs().maxCoeff(), 1e-8) << h;
    EXPECT_NEAR(m.determinant(), 1.0, 1e-8);
  }
}

TEST(Nonplanar, PushforwardMatrix) {
  for (double h : {0.25, 0.5, 1.0}) {
    const Eigen::Matrix4d m = nonplanar_pushforward_dg_matrix(make_bent_rhombus(h));
    EXPECT_LT((m - nonplanar_pushforward_expected()).cwiseAbs().maxCoeff(), 1e-8) << h;
    EXPECT_NEAR(m.determinant(), 1.0, 1e-8);
  }
}

TEST(Nonplanar, ScaleAndMotionFree) {
  std::mt19937_64 rng(17);
  for (int k : {3, 4, 6}) {
    for (int t = 0; t < 20; ++t) {
      const Config4 c = testing_support::transform(testing_support::lift(make_bent_rhombus(0.6), k),
                                                   testing_support::random_rotation(k, rng), 0.3 + t,
                                                   Eigen::VectorXd::Random(k));
      EXPECT_LT((nonplanar_dg_matrix(c) - nonplanar_expected()).cwiseAbs().maxCoeff(), 1e-8);
    }
  }
}

TEST(Nonplanar, BasisScalingByFiniteDifferences) {
  const Config4 c = make_bent_rhombus(0.8);
  const QuadMeasurements q = measurements(c);
  const double l = q.side, m = q.diagonal;
  const NonplanarBasis nb = nonplanar_basis(c);
  struct Want {
    int i, j;
    double rate;
  };
  const Want stated[4] = {{0, 3, -l / 2}, {1, 2, l / 2}, {2, 3, l / 2}, {0, 2, l * l / (2 * m)}};
  const double t = 1e-6;
  for (int b = 0; b < 4; ++b) {
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        const double analytic = length_derivative(c, nb.h[b], i, j);
        const double fd = (moved(c, nb.h[b], t).distance(i, j) - moved(c, nb.h[b], -t).distance(i, j)) / (2 * t);
        const bool is_stated = (i == stated[b].i && j == stated[b].j);
        const double want = is_stated ? stated[b].rate : 0.0;
        EXPECT_NEAR(analytic, want, 1e-10) << b << " " << i << j;
        EXPECT_NEAR(fd, want, 1e-6) << b << " " << i << j;
      }
  }
}

TEST(Nonplanar, Preconditions) {
  try {
    nonplanar_basis(make_bent_rhombus(0.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PlanarConfiguration);
  }
  try {
    nonplanar_basis(testing_support::config({{1.1, 0, 0}, {0, 1, 0.5}, {-1, 0, 0}, {0, -1, 0.5}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotOnSlq);
  }
}

TEST(Equivalence, HarnessPasses) {
  const EquivalenceReport r = equivalence_harness(1000, 1);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.trials, 1000);
  EXPECT_LT(r.max_g_residual_on_slq, 1e-10);
  EXPECT_LT(r.max_f_residual_on_slq, 1e-10);
  EXPECT_GT(r.min_g_residual_off_slq, 1e-4);
  EXPECT_GT(r.min_f_residual_off_slq, 1e-4);
  EXPECT_GE(r.min_violation, 1e-2);
}

TEST(Equivalence, StretchedDiagonalSeenByBoth) {
  const Config4 c = testing_support::config({{1.01, 0}, {0, 1}, {-1.01, 0}, {0, -1}});
  EXPECT_GT((g_map(c) - kSlqTarget).norm(), 1e-4);
  EXPECT_GT(f_map(c).norm(), 1e-4);
}

TEST(Equivalence, ZeroTrialsRejected) {
  try {
    equivalence_harness(0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}
