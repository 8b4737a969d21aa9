#include "sqpeg/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "sqpeg/error.hpp"

namespace sqpeg {

Config4::Config4(std::array<Vec, 4> points) : points_(std::move(points)) {
  const auto k = points_[0].size();
  for (const auto& p : points_)
    if (p.size() != k)
      throw Error(ErrorKind::DimensionMismatch, "configuration points differ in dimension");
  for (int i = 0; i < 4; ++i) {
    dist_[i][i] = 0.0;
    for (int j = i + 1; j < 4; ++j)
      dist_[i][j] = dist_[j][i] = (points_[i] - points_[j]).norm();
  }
}

Vec Config4::direction(int i, int j) const {
  if (dist_[i][j] == 0.0)
    throw Error(ErrorKind::CoincidentPoints,
                "p" + std::to_string(i + 1) + " coincides with p" + std::to_string(j + 1));
  return (points_[i] - points_[j]) / dist_[i][j];
}

double Config4::ratio(int i, int j, int l) const {
  const double num = dist_[i][j];
  const double den = dist_[i][l];
  if (den == 0.0)
    return num == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                      : std::numeric_limits<double>::infinity();
  return num / den;
}

double Config4::min_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) best = std::min(best, dist_[i][j]);
  return best;
}

double Config4::diameter() const {
  double best = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) best = std::max(best, dist_[i][j]);
  return best;
}

Vec direction(const Vec& p, const Vec& q) {
  if (p.size() != q.size())
    throw Error(ErrorKind::DimensionMismatch, "direction: points differ in dimension");
  const double d = (p - q).norm();
  if (d == 0.0) throw Error(ErrorKind::CoincidentPoints, "direction of coincident points");
  return (p - q) / d;
}

double ratio(const Vec& pi, const Vec& pj, const Vec& pl) {
  const double num = (pi - pj).norm();
  const double den = (pi - pl).norm();
  if (den == 0.0)
    return num == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                      : std::numeric_limits<double>::infinity();
  return num / den;
}

double s_from_ratio(double r) {
  if (std::isnan(r)) return r;
  if (std::isinf(r)) return 1.0;
  return 2.0 / std::numbers::pi * std::atan(r);
}

double s_ratio(const Vec& pi, const Vec& pj, const Vec& pl) {
  return s_from_ratio(ratio(pi, pj, pl));
}

bool is_indeterminate(double ratio_value) { return std::isnan(ratio_value); }

Config4 cyclic_relabel(const Config4& c) {
  return Config4({c.point(1), c.point(2), c.point(3), c.point(0)});
}

Angles4 cyclic_relabel(const Angles4& theta) {
  return {theta[1], theta[2], theta[3], theta[0]};
}

bool ordered_component_check(const Angles4& theta) {
  for (int r = 0; r < 4; ++r) {
    bool increasing = true;
    for (int i = 0; i < 3 && increasing; ++i)
      increasing = theta[(r + i) % 4] < theta[(r + i + 1) % 4];
    if (increasing) return true;
  }
  return false;
}

Stratum strata_proximity(const Config4& c, double scale, double eps) {
  if (!(scale > 0.0)) throw Error(ErrorKind::InvalidArgument, "strata scale must be positive");
  std::array<int, 4> parent{0, 1, 2, 3};
  auto find = [&parent](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  const double cutoff = eps * scale;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (c.distance(i, j) < cutoff) parent[find(j)] = find(i);

  Stratum out;
  for (int root = 0; root < 4; ++root) {
    std::vector<int> members;
    for (int i = 0; i < 4; ++i)
      if (find(i) == root) members.push_back(i + 1);
    if (members.size() >= 2) out.subsets.push_back(std::move(members));
  }
  // Clusters are discovered by root, which is not necessarily the smallest
  // member; order them by first element for a canonical label.
  std::sort(out.subsets.begin(), out.subsets.end());
  out.codim = static_cast<int>(out.subsets.size());
  if (out.subsets.empty()) {
    out.label = "interior";
  } else {
    for (const auto& s : out.subsets) {
      out.label += '(';
      for (int i : s) out.label += static_cast<char>('0' + i);
      out.label += ')';
    }
  }
  return out;
}

namespace {

// Fraction-free Gaussian elimination; exact for integer matrices whose
// minors fit in 64 bits.
std::int64_t bareiss_determinant(std::vector<std::vector<std::int64_t>> m) {
  const std::size_t n = m.size();
  std::int64_t sign = 1;
  std::int64_t prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace

int block_cycle_orientation_sign(int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "ambient dimension must be >= 1");
  const int n = 4 * k;
  std::vector<std::vector<std::int64_t>> perm(n, std::vector<std::int64_t>(n, 0));
  // Output block b takes input block (b + 1) mod 4.
  for (int b = 0; b < 4; ++b)
    for (int i = 0; i < k; ++i) perm[b * k + i][((b + 1) % 4) * k + i] = 1;
  const auto det = bareiss_determinant(std::move(perm));
  return det > 0 ? 1 : -1;
}

}  // namespace sqpeg
