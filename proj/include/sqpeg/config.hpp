#pragma once

#include <array>
#include <string>
#include <vector>

#include "sqpeg/types.hpp"

namespace sqpeg {

// Ordered 4-tuple of points in R^k. Indices are 0-based here: point(0) is
// the first labeled point. Pairwise distances are cached at construction.
class Config4 {
 public:
  Config4() = default;
  explicit Config4(std::array<Vec, 4> points);

  int dim() const { return static_cast<int>(points_[0].size()); }
  const Vec& point(int i) const { return points_[i]; }
  const std::array<Vec, 4>& points() const { return points_; }

  double distance(int i, int j) const { return dist_[i][j]; }

  // Unit vector from p_j towards p_i. Throws CoincidentPoints.
  Vec direction(int i, int j) const;

  // |p_i - p_j| / |p_i - p_l|; +inf or NaN as for the free ratio().
  double ratio(int i, int j, int l) const;

  // Smallest pairwise distance.
  double min_distance() const;
  // Largest pairwise distance.
  double diameter() const;

 private:
  std::array<Vec, 4> points_;
  std::array<std::array<double, 4>, 4> dist_{};
};

// (p - q) / |p - q|. Throws CoincidentPoints when p == q.
Vec direction(const Vec& p, const Vec& q);

// |pi - pj| / |pi - pl|. Returns +inf when only the denominator vanishes
// and a quiet NaN (the indeterminate sentinel) when both vanish.
double ratio(const Vec& pi, const Vec& pj, const Vec& pl);

// (2/pi) atan(ratio) in [0, 1]; NaN propagates.
double s_ratio(const Vec& pi, const Vec& pj, const Vec& pl);
double s_from_ratio(double r);

bool is_indeterminate(double ratio_value);

// (p1, p2, p3, p4) -> (p2, p3, p4, p1).
Config4 cyclic_relabel(const Config4& c);
Angles4 cyclic_relabel(const Angles4& theta);

// True iff some cyclic rotation of theta is strictly increasing.
bool ordered_component_check(const Angles4& theta);

struct Stratum {
  std::string label;                       // "interior", "(12)", "(13)(24)", "(1234)"...
  int codim = 0;                           // number of collapsed groups
  std::vector<std::vector<int>> subsets;   // 1-based indices, as in the label
};

inline constexpr double kDefaultStrataEps = 1e-3;

// Single-linkage clustering of indices whose distance is below eps * scale.
// Only one level of parenthesization is reported.
Stratum strata_proximity(const Config4& c, double scale, double eps = kDefaultStrataEps);

// Sign of det of the 4k x 4k block permutation realizing the cyclic
// relabeling on (R^k)^4, computed exactly over the integers.
int block_cycle_orientation_sign(int k);

}  // namespace sqpeg
