#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "sqpeg/config.hpp"
#include "sqpeg/curve.hpp"

namespace sqpeg {

struct SolveOptions {
  int grid = 24;               // seed grid points per axis
  double tol_residual = 1e-12; // |G| at convergence
  int max_iters = 50;
  double dedup_radius = 1e-6;  // sup-metric radius on theta for class merging
  double sep_guard = 1e-3;     // min pairwise distance / curve diameter
  double det_threshold = 1e-8; // relative to (rms row norm)^4
  int threads = 1;
};

// A square-like quadrilateral inscribed in a curve.
struct Solution {
  Angles4 theta{};
  Config4 points;
  double residual_norm = 0.0;
  double jac_det = 0.0;
  bool transverse = false;
  double min_separation = 0.0;  // over curve diameter
};

enum class SolveFlag { NearBoundary, NonTransverse, ContinuumSuspected };
std::string_view to_string(SolveFlag flag);

struct SolveReport {
  std::vector<Solution> classes;  // one canonical representative per Z/4 class
  int labeled_count = 0;          // 4 x classes
  bool all_transverse = true;
  std::optional<int> parity;      // classes mod 2, only when all_transverse
  std::vector<SolveFlag> flags;
  int seeds = 0;
  int converged = 0;
  double seconds = 0.0;

  bool has_flag(SolveFlag f) const;
};

enum class RefineStatus {
  Converged,
  Divergence,
  LeftOrderedComponent,
  NearBoundary,
  SingularJacobianDuringIteration,
};
std::string_view to_string(RefineStatus status);

struct RefineResult {
  RefineStatus status = RefineStatus::Divergence;
  Solution solution;  // meaningful when Converged
  int iterations = 0;
};

// G(theta) = g(gamma(theta_1), ..., gamma(theta_4)) - (1, 1, 1, 0).
// Throws DegenerateConfiguration when two curve points are closer than
// 1e-9 x curve diameter.
Eigen::Vector4d residual(const Curve& curve, const Angles4& theta);

// dG/dtheta, column j for unit speed in theta_j. Exact (not the
// on-locus simplification), so valid away from solutions.
Eigen::Matrix4d jacobian(const Curve& curve, const Angles4& theta);

// |det J| > det_threshold * (|J|_F^2 / 4)^2, i.e. the determinant against the
// fourth power of the quadratic-mean row norm.
bool is_transverse(const Eigen::Matrix4d& jac, double det_threshold);

// Ordered 4-tuples from the uniform n-grid with theta_1 in [0, pi/2).
std::vector<Angles4> seed_grid(int n_per_axis);

RefineResult newton_refine(const Curve& curve, const Angles4& seed,
                           const SolveOptions& opts = {});

// Rotate the labeling so the smallest angle comes first.
Solution canonical_rotation(const Solution& s);

// min over cyclic alignments of the sup circular distance on theta.
double class_distance(const Angles4& a, const Angles4& b);

// Single-linkage clustering of canonically rotated solutions; one
// representative (lexicographically smallest theta) per cluster, output
// sorted lexicographically.
std::vector<Solution> quotient_dedup(std::vector<Solution> solutions, double radius);

// Refines every grid seed plus any extra seeds, deduplicates, certifies.
SolveReport find_all(const Curve& curve, const SolveOptions& opts = {},
                     std::span<const Angles4> extra_seeds = {});

}  // namespace sqpeg
