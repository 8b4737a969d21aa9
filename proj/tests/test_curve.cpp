#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sqpeg/curve.hpp"
#include "sqpeg/curve_io.hpp"
#include "sqpeg/error.hpp"
#include "test_support.hpp"

using namespace sqpeg;
using testing_support::data_path;

namespace {

void expect_point(const Vec& p, double x, double y, double tol = 1e-14) {
  ASSERT_EQ(p.size(), 2);
  EXPECT_NEAR(p[0], x, tol);
  EXPECT_NEAR(p[1], y, tol);
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(CurveEval, EllipseCardinalPoints) {
  const Curve e = make_ellipse(2, 1);
  expect_point(e.eval(0.0), 2, 0);
  expect_point(e.eval(std::numbers::pi / 2), 0, 1);
  expect_point(make_ellipse(3, 2).eval(std::numbers::pi), -3, 0);
}

TEST(CurveEval, EllipseSquareVertexAngle) {
  for (auto [a, b] : {std::pair{2.0, 1.0}, {3.0, 2.0}, {10.0, 1.0}}) {
    const double th = std::acos(b / std::hypot(a, b));
    const double s = a * b / std::hypot(a, b);
    expect_point(make_ellipse(a, b).eval(th), s, s, 1e-13);
  }
}

TEST(CurveDeriv, EllipseAtZero) { expect_point(make_ellipse(2, 1).deriv(0.0), 0, 1); }

TEST(CurveDeriv, TangentAtSquareVertexIsClosedForm) {
  const double a = 2, b = 1;
  const double th = std::acos(b / std::hypot(a, b));
  const Vec t = make_ellipse(a, b).deriv(th);
  const double r = std::hypot(a, b);
  const Eigen::Vector2d want(-a * a / r, b * b / r);
  EXPECT_NEAR(t[0] * want[1] - t[1] * want[0], 0.0, 1e-13);
  EXPECT_GT(t.dot(Vec(want)), 0.0);
}

TEST(CurveDeriv, MatchesCentralDifferences) {
  const Curve curves[] = {make_ellipse(2, 1), testing_support::three_lobed(),
                          perturb(make_ellipse(2, 1), 0.05, 5, 3),
                          load_curve(data_path("twisted_3d.json"))};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, kTwoPi);
  const double h = 1e-6;
  for (const auto& c : curves) {
    for (int i = 0; i < 1000; ++i) {
      const double th = u(rng);
      const Vec fd = (c.eval(th + h) - c.eval(th - h)) / (2 * h);
      const Vec d = c.deriv(th);
      EXPECT_LT((fd - d).norm() / d.norm(), 1e-6) << th;
    }
  }
}

TEST(CurveEval, PeriodicTo1e12) {
  const Curve c = perturb(testing_support::three_lobed(), 0.02, 6, 5);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-20, 20);
  for (int i = 0; i < 1000; ++i) {
    const double th = u(rng);
    EXPECT_LT((c.eval(th) - c.eval(th + kTwoPi)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(CurveEvalWithDeriv, AgreesWithSeparateCalls) {
  const Curve c = testing_support::three_lobed();
  Vec p, t;
  for (double th : {0.0, 0.3, 2.0, 6.2}) {
    c.eval_with_deriv(th, p, t);
    EXPECT_LT((p - c.eval(th)).norm(), 1e-15);
    EXPECT_LT((t - c.deriv(th)).norm(), 1e-15);
  }
}

TEST(MakeEllipse, Coefficients) {
  const Curve e = make_ellipse(2, 1);
  ASSERT_EQ(e.dim(), 2);
  ASSERT_EQ(e.harmonics(), 1);
  EXPECT_EQ(e.coords()[0].cos[0], 2.0);
  EXPECT_EQ(e.coords()[0].sin[0], 0.0);
  EXPECT_EQ(e.coords()[1].cos[0], 0.0);
  EXPECT_EQ(e.coords()[1].sin[0], 1.0);
}

TEST(MakeEllipse, CircleIsLegal) { EXPECT_NO_THROW(make_ellipse(1, 1)); }

TEST(MakeEllipse, RejectsNonPositiveAxes) {
  EXPECT_EQ(kind_of([] { make_ellipse(0, 1); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { make_ellipse(2, -1); }), ErrorKind::InvalidArgument);
}

TEST(CurveCtor, RejectsShapeErrors) {
  EXPECT_EQ(kind_of([] { Curve({FourierCoord{0, {1}, {0}}}); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { Curve({FourierCoord{0, {1}, {0}}, FourierCoord{0, {0, 1}, {1, 0}}}); }),
            ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { Curve({FourierCoord{0, {1}, {0, 1}}, FourierCoord{0, {0}, {1}}}); }),
            ErrorKind::InvalidArgument);
}

TEST(CurveCtor, RejectsStationaryCurve) {
  EXPECT_EQ(kind_of([] { Curve({FourierCoord{1, {0}, {0}}, FourierCoord{2, {0}, {0}}}); }),
            ErrorKind::IrregularCurve);
  // (cos t, 0) stops at t = 0 and t = pi
  EXPECT_EQ(kind_of([] { Curve({FourierCoord{0, {1}, {0}}, FourierCoord{0, {0}, {0}}}); }),
            ErrorKind::IrregularCurve);
}

TEST(Perturb, ZeroAmplitudeIsIdentity) {
  const Curve e = make_ellipse(2, 1);
  EXPECT_EQ(perturb(e, 0.0, 5, 9), e);
}

TEST(Perturb, DeterministicInSeed) {
  const Curve e = make_ellipse(2, 1);
  const Curve a = perturb(e, 0.05, 5, 7), b = perturb(e, 0.05, 5, 7);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a == perturb(e, 0.05, 5, 8));
}

TEST(Perturb, Seed7StaysFast) {
  const CurveCheck chk = regularity_and_embedding_check(testing_support::seed7_curve(), 4096);
  EXPECT_GT(chk.min_speed, 0.5);
}

TEST(Perturb, SupChangeBounded) {
  const Curve e = make_ellipse(2, 1);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const double amp = 0.05;
    const int h = 5;
    const Curve p = perturb(e, amp, h, seed);
    EXPECT_EQ(p.harmonics(), h);
    double sup = 0;
    for (int i = 0; i < 4096; ++i) {
      const double th = kTwoPi * i / 4096;
      sup = std::max(sup, (p.eval(th) - e.eval(th)).cwiseAbs().maxCoeff());
    }
    EXPECT_LE(sup, amp * h * 2 * e.dim());
  }
}

TEST(Perturb, IrregularResultIsRejected) {
  // Recover the seed's noise from a reference curve, then start from a
  // curve that the same noise lands exactly on (cos t, 0), which stops at
  // t = 0 and t = pi.
  const Curve ref({FourierCoord{0, {3, 0}, {0, 0}}, FourierCoord{0, {0, 0}, {3, 0}}});
  const Curve noisy = perturb(ref, 0.05, 2, 99);
  std::vector<FourierCoord> base = ref.coords();
  for (int d = 0; d < 2; ++d)
    for (int h = 0; h < 2; ++h) {
      base[d].cos[h] = -(noisy.coords()[d].cos[h] - ref.coords()[d].cos[h]);
      base[d].sin[h] = -(noisy.coords()[d].sin[h] - ref.coords()[d].sin[h]);
    }
  base[0].cos[0] += 1.0;
  const Curve start(base);
  EXPECT_EQ(kind_of([&] { perturb(start, 0.05, 2, 99); }), ErrorKind::RegularityLost);
}

TEST(RegularityCheck, EllipseSpeedAndEmbedding) {
  const CurveCheck chk = regularity_and_embedding_check(make_ellipse(2, 1), 4096);
  EXPECT_NEAR(chk.min_speed, 1.0, 1e-12);
  EXPECT_GT(chk.min_self_distance, 0.0);
}

TEST(RegularityCheck, FigureEightSelfIntersects) {
  const Curve fig8 = load_curve(data_path("figure_eight.json"));
  const CurveCheck chk = regularity_and_embedding_check(fig8, 4096);
  EXPECT_GT(chk.min_speed, 0.0);
  EXPECT_LT(chk.min_self_distance, 1e-9);
}

TEST(RegularityCheck, RejectsTooFewSamples) {
  EXPECT_EQ(kind_of([] { regularity_and_embedding_check(make_ellipse(2, 1), 15); }),
            ErrorKind::InvalidArgument);
}

TEST(CurveJson, EllipseShorthandAndGeneralFormAgree) {
  const Curve a = curve_from_json(nlohmann::json::parse(R"({"type":"ellipse","a":2,"b":1})"));
  const Curve b = curve_from_json(nlohmann::json::parse(
      R"({"dim":2,"coords":[{"a0":0,"cos":[2],"sin":[0]},{"a0":0,"cos":[0],"sin":[1]}]})"));
  EXPECT_EQ(a, b);
  EXPECT_EQ(curve_hash(a), curve_hash(b));
}

TEST(CurveJson, RoundTripIsExact) {
  const Curve c = perturb(testing_support::three_lobed(), 0.03, 4, 2);
  const Curve back = curve_from_json(nlohmann::json::parse(curve_to_json(c).dump()));
  EXPECT_EQ(c, back);
}

TEST(CurveJson, MalformedInputNamesTheField) {
  auto msg = [](const char* text) -> std::string {
    try {
      curve_from_json(nlohmann::json::parse(text));
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::MalformedInput);
      return e.what();
    }
    return "";
  };
  EXPECT_NE(msg(R"({"dim":2,"coords":[{"a0":0,"cos":[1],"sin":[0]},{"a0":0,"cos":["x"],"sin":[1]}]})")
                .find("coords[1].cos"),
            std::string::npos);
  EXPECT_NE(msg(R"({"type":"ellipse","a":2})").find("b"), std::string::npos);
  EXPECT_NE(msg(R"({"dim":3,"coords":[{"a0":0,"cos":[1],"sin":[0]},{"a0":0,"cos":[0],"sin":[1]}]})")
                .find("dim"),
            std::string::npos);
  EXPECT_NE(msg(R"([1,2])"), "");
}

TEST(CurveJson, HashDependsOnEveryCoefficient) {
  const Curve e = make_ellipse(2, 1);
  const Curve f = make_ellipse(2, 1.0000000000000002);
  EXPECT_NE(curve_hash(e), curve_hash(f));
  EXPECT_EQ(curve_hash(e).size(), 16u);
}
