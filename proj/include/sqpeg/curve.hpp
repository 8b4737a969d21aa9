#pragma once

#include <cstdint>
#include <vector>

#include "sqpeg/types.hpp"

namespace sqpeg {

// One coordinate of a closed curve:
//   x(theta) = a0 + sum_h cos[h-1] cos(h theta) + sin[h-1] sin(h theta)
struct FourierCoord {
  double a0 = 0.0;
  std::vector<double> cos;
  std::vector<double> sin;

  bool operator==(const FourierCoord&) const = default;
};

// Regular closed curve S^1 -> R^k given by a truncated Fourier series per
// coordinate, parametrized on [0, 2pi). Immutable once constructed.
class Curve {
 public:
  // Throws IrregularCurve if the sampled speed drops to 1e-6 x diameter
  // or below, InvalidArgument on shape errors (dim < 2, ragged series).
  explicit Curve(std::vector<FourierCoord> coords);

  int dim() const { return static_cast<int>(coords_.size()); }
  int harmonics() const { return harmonics_; }
  const std::vector<FourierCoord>& coords() const { return coords_; }

  // Diameter estimated from 1024 samples at construction.
  double diameter() const { return diameter_; }

  Vec eval(double theta) const;
  Vec deriv(double theta) const;
  void eval_with_deriv(double theta, Vec& point, Vec& tangent) const;

  bool operator==(const Curve& other) const { return coords_ == other.coords_; }

 private:
  std::vector<FourierCoord> coords_;
  int harmonics_ = 0;
  double diameter_ = 0.0;
};

struct CurveCheck {
  double min_speed = 0.0;
  double min_self_distance = 0.0;
};

inline constexpr int kDefaultCheckSamples = 4096;

// (a cos t, b sin t); a, b > 0.
Curve make_ellipse(double a, double b);

// Adds independent uniform[-amplitude, amplitude] noise to the cosine and
// sine coefficients of harmonics 1..max_harmonic of every coordinate.
// Deterministic in seed. Throws RegularityLost if the result is not regular.
Curve perturb(const Curve& curve, double amplitude, int max_harmonic,
              std::uint64_t seed);

// Pure report. min_self_distance only compares samples whose index
// separation exceeds 4 (cyclically), i.e. angular gap > 8 pi / samples.
CurveCheck regularity_and_embedding_check(const Curve& curve,
                                          int samples = kDefaultCheckSamples);

}  // namespace sqpeg
