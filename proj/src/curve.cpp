#include "sqpeg/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "sqpeg/error.hpp"

namespace sqpeg {

namespace {

constexpr int kDiameterSamples = 1024;
constexpr double kRegularityFactor = 1e-6;

double sampled_diameter(const Curve& curve, int samples) {
  std::vector<Vec> pts;
  pts.reserve(samples);
  for (int i = 0; i < samples; ++i) pts.push_back(curve.eval(kTwoPi * i / samples));
  double best = 0.0;
  for (int i = 0; i < samples; ++i)
    for (int j = i + 1; j < samples; ++j)
      best = std::max(best, (pts[i] - pts[j]).squaredNorm());
  return std::sqrt(best);
}

double sampled_min_speed(const Curve& curve, int samples) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i)
    best = std::min(best, curve.deriv(kTwoPi * i / samples).norm());
  return best;
}

}  // namespace

Curve::Curve(std::vector<FourierCoord> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2)
    throw Error(ErrorKind::InvalidArgument, "curve dimension must be at least 2");
  if (coords_.size() > static_cast<std::size_t>(kMaxDim))
    throw Error(ErrorKind::InvalidArgument,
                "curve dimension exceeds " + std::to_string(kMaxDim));
  harmonics_ = static_cast<int>(coords_.front().cos.size());
  for (const auto& c : coords_) {
    if (static_cast<int>(c.cos.size()) != harmonics_ ||
        static_cast<int>(c.sin.size()) != harmonics_)
      throw Error(ErrorKind::InvalidArgument,
                  "all coordinate series must have the same harmonic count");
    auto finite = [](double x) { return std::isfinite(x); };
    if (!std::isfinite(c.a0) || !std::all_of(c.cos.begin(), c.cos.end(), finite) ||
        !std::all_of(c.sin.begin(), c.sin.end(), finite))
      throw Error(ErrorKind::InvalidArgument, "non-finite Fourier coefficient");
  }
  diameter_ = sampled_diameter(*this, kDiameterSamples);
  const double speed = sampled_min_speed(*this, kDefaultCheckSamples);
  if (!(speed > kRegularityFactor * diameter_))
    throw Error(ErrorKind::IrregularCurve,
                "sampled minimum speed " + std::to_string(speed) +
                    " is not above 1e-6 x diameter");
}

void Curve::eval_with_deriv(double theta, Vec& point, Vec& tangent) const {
  const int k = dim();
  point.resize(k);
  tangent.resize(k);
  for (int i = 0; i < k; ++i) {
    point[i] = coords_[i].a0;
    tangent[i] = 0.0;
  }
  const double t = wrap_angle(theta);
  const double c1 = std::cos(t);
  const double s1 = std::sin(t);
  double ch = c1;
  double sh = s1;
  for (int h = 1; h <= harmonics_; ++h) {
    for (int i = 0; i < k; ++i) {
      const double a = coords_[i].cos[h - 1];
      const double b = coords_[i].sin[h - 1];
      point[i] += a * ch + b * sh;
      tangent[i] += h * (b * ch - a * sh);
    }
    const double next_c = ch * c1 - sh * s1;
    sh = sh * c1 + ch * s1;
    ch = next_c;
  }
}

Vec Curve::eval(double theta) const {
  Vec p, dp;
  eval_with_deriv(theta, p, dp);
  return p;
}

Vec Curve::deriv(double theta) const {
  Vec p, dp;
  eval_with_deriv(theta, p, dp);
  return dp;
}

Curve make_ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw Error(ErrorKind::InvalidArgument, "ellipse semi-axes must be positive");
  return Curve({FourierCoord{0.0, {a}, {0.0}}, FourierCoord{0.0, {0.0}, {b}}});
}

Curve perturb(const Curve& curve, double amplitude, int max_harmonic,
              std::uint64_t seed) {
  if (!(amplitude >= 0.0))
    throw Error(ErrorKind::InvalidArgument, "perturbation amplitude must be >= 0");
  if (max_harmonic < 0)
    throw Error(ErrorKind::InvalidArgument, "max_harmonic must be >= 0");
  if (amplitude == 0.0 || max_harmonic == 0) return curve;

  std::vector<FourierCoord> coords = curve.coords();
  const std::size_t h_total =
      std::max<std::size_t>(max_harmonic, static_cast<std::size_t>(curve.harmonics()));
  for (auto& c : coords) {
    c.cos.resize(h_total, 0.0);
    c.sin.resize(h_total, 0.0);
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(-amplitude, amplitude);
  for (auto& c : coords) {
    for (int h = 0; h < max_harmonic; ++h) {
      c.cos[h] += noise(rng);
      c.sin[h] += noise(rng);
    }
  }
  try {
    return Curve(std::move(coords));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::IrregularCurve)
      throw Error(ErrorKind::RegularityLost, "perturbed curve is not regular");
    throw;
  }
}

CurveCheck regularity_and_embedding_check(const Curve& curve, int samples) {
  if (samples < 16)
    throw Error(ErrorKind::InvalidArgument, "need at least 16 samples");
  std::vector<Vec> pts(samples);
  CurveCheck out;
  out.min_speed = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    Vec dp;
    curve.eval_with_deriv(kTwoPi * i / samples, pts[i], dp);
    out.min_speed = std::min(out.min_speed, dp.norm());
  }
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    for (int j = i + 5; j < samples; ++j) {
      if (samples - (j - i) <= 4) continue;
      best = std::min(best, (pts[i] - pts[j]).squaredNorm());
    }
  }
  out.min_self_distance = std::sqrt(best);
  return out;
}

}  // namespace sqpeg
