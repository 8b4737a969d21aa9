#include "sqpeg/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

#include <Eigen/Dense>

#include "sqpeg/error.hpp"
#include "sqpeg/slq.hpp"

namespace sqpeg {

namespace {

constexpr double kMinResidualSeparation = 1e-9;
constexpr double kMaxStep = 0.5;          // radians, per coordinate
constexpr int kMaxHalvings = 12;
constexpr double kPinvThreshold = 1e-10;  // relative rank cutoff for the step solve
constexpr double kContinuumFactor = 1e3;

struct CurvePoints {
  std::array<Vec, 4> p;
  std::array<Vec, 4> t;
};

CurvePoints sample(const Curve& curve, const Angles4& theta) {
  CurvePoints out;
  for (int i = 0; i < 4; ++i) curve.eval_with_deriv(theta[i], out.p[i], out.t[i]);
  return out;
}

void check_separation(const Curve& curve, const std::array<Vec, 4>& p) {
  const double cutoff = kMinResidualSeparation * curve.diameter();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (!((p[i] - p[j]).norm() > cutoff))
        throw Error(ErrorKind::DegenerateConfiguration,
                    "curve points " + std::to_string(i + 1) + " and " +
                        std::to_string(j + 1) + " nearly coincide");
}

bool lex_less(const Angles4& a, const Angles4& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::string_view to_string(SolveFlag flag) {
  switch (flag) {
    case SolveFlag::NearBoundary: return "NearBoundary";
    case SolveFlag::NonTransverse: return "NonTransverse";
    case SolveFlag::ContinuumSuspected: return "ContinuumSuspected";
  }
  return "Unknown";
}

std::string_view to_string(RefineStatus status) {
  switch (status) {
    case RefineStatus::Converged: return "Converged";
    case RefineStatus::Divergence: return "Divergence";
    case RefineStatus::LeftOrderedComponent: return "LeftOrderedComponent";
    case RefineStatus::NearBoundary: return "NearBoundary";
    case RefineStatus::SingularJacobianDuringIteration: return "SingularJacobianDuringIteration";
  }
  return "Unknown";
}

bool SolveReport::has_flag(SolveFlag f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

Eigen::Vector4d residual(const Curve& curve, const Angles4& theta) {
  std::array<Vec, 4> p;
  for (int i = 0; i < 4; ++i) p[i] = curve.eval(theta[i]);
  check_separation(curve, p);
  return g_map(Config4(p)) - kSlqTarget;
}

Eigen::Matrix4d jacobian(const Curve& curve, const Angles4& theta) {
  const CurvePoints cp = sample(curve, theta);
  check_separation(curve, cp.p);

  // Squared distances S_ij and their theta-partials
  //   dS_ij/dtheta_m = 2 (p_i - p_j).(delta_im t_i - delta_jm t_j).
  auto S = [&](int i, int j) { return (cp.p[i] - cp.p[j]).squaredNorm(); };
  auto dS = [&](int i, int j, int m) {
    if (m == i) return 2.0 * (cp.p[i] - cp.p[j]).dot(cp.t[i]);
    if (m == j) return -2.0 * (cp.p[i] - cp.p[j]).dot(cp.t[j]);
    return 0.0;
  };
  const double s12 = S(0, 1), s14 = S(0, 3), s23 = S(1, 2), s34 = S(2, 3);
  const double s13 = S(0, 2), s24 = S(1, 3);
  const double g1 = s12 / s14, g2 = s23 / s12, g3 = s34 / s23, g4 = (s13 - s24) / s12;

  Eigen::Matrix4d jac;
  for (int m = 0; m < 4; ++m) {
    jac(0, m) = (dS(0, 1, m) - g1 * dS(0, 3, m)) / s14;
    jac(1, m) = (dS(1, 2, m) - g2 * dS(0, 1, m)) / s12;
    jac(2, m) = (dS(2, 3, m) - g3 * dS(1, 2, m)) / s23;
    jac(3, m) = (dS(0, 2, m) - dS(1, 3, m) - g4 * dS(0, 1, m)) / s12;
  }
  return jac;
}

bool is_transverse(const Eigen::Matrix4d& jac, double det_threshold) {
  // Quadratic mean of the row norms, to the fourth power. Unlike the
  // product of row norms it does not collapse when one row vanishes.
  const double mean_sq = jac.squaredNorm() / 4.0;
  return std::fabs(jac.determinant()) > det_threshold * mean_sq * mean_sq;
}

std::vector<Angles4> seed_grid(int n) {
  if (n < 4) throw Error(ErrorKind::InvalidArgument, "seed grid needs at least 4 points per axis");
  std::vector<Angles4> out;
  const double step = kTwoPi / n;
  for (int i = 0; 4 * i < n; ++i)
    for (int a = 1; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c)
          out.push_back({step * i, step * ((i + a) % n), step * ((i + b) % n),
                         step * ((i + c) % n)});
  return out;
}

RefineResult newton_refine(const Curve& curve, const Angles4& seed, const SolveOptions& opts) {
  RefineResult out;
  Angles4 theta;
  for (int i = 0; i < 4; ++i) theta[i] = wrap_angle(seed[i]);
  if (!ordered_component_check(theta)) {
    out.status = RefineStatus::LeftOrderedComponent;
    return out;
  }

  Eigen::Vector4d G;
  try {
    G = residual(curve, theta);
  } catch (const Error&) {
    out.status = RefineStatus::NearBoundary;
    return out;
  }
  double norm = G.norm();
  bool rank_deficient = false;

  Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix4d> cod;
  cod.setThreshold(kPinvThreshold);

  while (!(norm < opts.tol_residual)) {
    if (out.iterations >= opts.max_iters) {
      out.status = rank_deficient ? RefineStatus::SingularJacobianDuringIteration
                                  : RefineStatus::Divergence;
      return out;
    }
    ++out.iterations;
    cod.compute(jacobian(curve, theta));
    if (cod.rank() < 4) rank_deficient = true;
    Eigen::Vector4d delta = cod.solve(-G);
    const double biggest = delta.cwiseAbs().maxCoeff();
    if (!std::isfinite(biggest)) {
      out.status = RefineStatus::SingularJacobianDuringIteration;
      return out;
    }
    if (biggest > kMaxStep) delta *= kMaxStep / biggest;

    bool accepted = false;
    double lambda = 1.0;
    for (int h = 0; h <= kMaxHalvings && !accepted; ++h, lambda *= 0.5) {
      Angles4 cand;
      for (int i = 0; i < 4; ++i) cand[i] = wrap_angle(theta[i] + lambda * delta[i]);
      Eigen::Vector4d Gc;
      try {
        Gc = residual(curve, cand);
      } catch (const Error&) {
        continue;
      }
      const double nc = Gc.norm();
      if (nc < norm) {
        theta = cand;
        G = Gc;
        norm = nc;
        accepted = true;
      }
    }
    if (!accepted) {
      out.status = rank_deficient ? RefineStatus::SingularJacobianDuringIteration
                                  : RefineStatus::Divergence;
      return out;
    }
  }

  if (!ordered_component_check(theta)) {
    out.status = RefineStatus::LeftOrderedComponent;
    return out;
  }
  std::array<Vec, 4> p;
  for (int i = 0; i < 4; ++i) p[i] = curve.eval(theta[i]);
  Config4 config(p);
  const double separation = config.min_distance() / curve.diameter();
  if (!(separation > opts.sep_guard)) {
    out.status = RefineStatus::NearBoundary;
    return out;
  }

  const Eigen::Matrix4d jac = jacobian(curve, theta);
  out.status = RefineStatus::Converged;
  out.solution.theta = theta;
  out.solution.points = std::move(config);
  out.solution.residual_norm = norm;
  out.solution.jac_det = jac.determinant();
  out.solution.transverse = is_transverse(jac, opts.det_threshold);
  out.solution.min_separation = separation;
  return out;
}

Solution canonical_rotation(const Solution& s) {
  const auto first = static_cast<int>(
      std::min_element(s.theta.begin(), s.theta.end()) - s.theta.begin());
  Solution out = s;
  std::array<Vec, 4> pts;
  for (int i = 0; i < 4; ++i) {
    out.theta[i] = s.theta[(first + i) % 4];
    pts[i] = s.points.point((first + i) % 4);
  }
  out.points = Config4(pts);
  return out;
}

double class_distance(const Angles4& a, const Angles4& b) {
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < 4; ++r) {
    double sup = 0.0;
    for (int i = 0; i < 4; ++i) sup = std::max(sup, circular_distance(a[i], b[(i + r) % 4]));
    best = std::min(best, sup);
  }
  return best;
}

std::vector<Solution> quotient_dedup(std::vector<Solution> solutions, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "dedup radius must be positive");
  for (auto& s : solutions) s = canonical_rotation(s);

  // Greedy attach to a cluster representative, then merge clusters that
  // have any member pair within the radius. Together this yields the
  // single-linkage components.
  struct Cluster {
    std::vector<std::size_t> members;
    double spread = 0.0;  // max member distance to members[0]
  };
  std::vector<Cluster> clusters;
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    bool placed = false;
    for (auto& c : clusters) {
      const double d = class_distance(solutions[c.members[0]].theta, solutions[i].theta);
      if (d < radius) {
        c.members.push_back(i);
        c.spread = std::max(c.spread, d);
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({{i}, 0.0});
  }

  std::vector<std::size_t> parent(clusters.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t a = 0; a < clusters.size(); ++a) {
    for (std::size_t b = a + 1; b < clusters.size(); ++b) {
      if (find(a) == find(b)) continue;
      const double rep = class_distance(solutions[clusters[a].members[0]].theta,
                                        solutions[clusters[b].members[0]].theta);
      if (rep - clusters[a].spread - clusters[b].spread >= radius) continue;
      bool linked = false;
      for (std::size_t i : clusters[a].members) {
        for (std::size_t j : clusters[b].members) {
          if (class_distance(solutions[i].theta, solutions[j].theta) < radius) {
            linked = true;
            break;
          }
        }
        if (linked) break;
      }
      if (linked) parent[find(b)] = find(a);
    }
  }

  std::vector<std::optional<std::size_t>> best(clusters.size());
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    auto& slot = best[find(c)];
    for (std::size_t i : clusters[c].members)
      if (!slot || lex_less(solutions[i].theta, solutions[*slot].theta)) slot = i;
  }
  std::vector<Solution> out;
  for (const auto& slot : best)
    if (slot) out.push_back(solutions[*slot]);
  std::sort(out.begin(), out.end(),
            [](const Solution& a, const Solution& b) { return lex_less(a.theta, b.theta); });
  return out;
}

SolveReport find_all(const Curve& curve, const SolveOptions& opts,
                     std::span<const Angles4> extra_seeds) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<Angles4> seeds = seed_grid(opts.grid);
  seeds.insert(seeds.end(), extra_seeds.begin(), extra_seeds.end());

  std::vector<RefineResult> results(seeds.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < seeds.size(); i += stride)
      results[i] = newton_refine(curve, seeds[i], opts);
  };
  const int threads = std::max(1, opts.threads);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }

  SolveReport report;
  report.seeds = static_cast<int>(seeds.size());
  std::vector<Solution> found;
  bool near_boundary = false;
  for (auto& r : results) {
    if (r.status == RefineStatus::Converged) found.push_back(std::move(r.solution));
    if (r.status == RefineStatus::NearBoundary && r.iterations > 0) near_boundary = true;
  }
  report.converged = static_cast<int>(found.size());
  report.classes = quotient_dedup(std::move(found), opts.dedup_radius);
  report.labeled_count = 4 * static_cast<int>(report.classes.size());

  report.all_transverse = std::all_of(report.classes.begin(), report.classes.end(),
                                      [](const Solution& s) { return s.transverse; });
  if (report.all_transverse) report.parity = static_cast<int>(report.classes.size() % 2);

  if (near_boundary) report.flags.push_back(SolveFlag::NearBoundary);
  if (!report.all_transverse) report.flags.push_back(SolveFlag::NonTransverse);
  const double continuum_radius = kContinuumFactor * opts.dedup_radius;
  bool continuum = false;
  for (std::size_t a = 0; a < report.classes.size() && !continuum; ++a) {
    for (std::size_t b = a + 1; b < report.classes.size(); ++b) {
      const auto& x = report.classes[a];
      const auto& y = report.classes[b];
      if ((!x.transverse || !y.transverse) &&
          class_distance(x.theta, y.theta) < continuum_radius) {
        continuum = true;
        break;
      }
    }
  }
  if (continuum) report.flags.push_back(SolveFlag::ContinuumSuspected);

  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace sqpeg
