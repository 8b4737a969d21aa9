#include "sqpeg/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "sqpeg/error.hpp"

namespace sqpeg {

namespace {

constexpr int kEmbeddingSamples = 1024;

std::string t_string(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "t=%.10g", t);
  return buf;
}

class PathSolver {
 public:
  PathSolver(const Curve& c0, const Curve& c1, const TrackOptions& opts)
      : c0_(c0), c1_(c1), opts_(opts) {}

  SolveReport solve(double t, const std::vector<Angles4>& seeds, bool endpoint) const {
    const Curve curve = curve_at(t);
    SolveOptions so = opts_.solver;
    if (!endpoint) so.grid = opts_.fresh_grid;
    SolveReport rep = find_all(curve, so, seeds);
    if (rep.classes.size() % 2 == expected_parity_) return rep;
    // Odd jumps usually mean one half of a freshly born (or dying) pair was
    // missed. Search for partners along the most singular direction of
    // each class's Jacobian.
    std::vector<Angles4> more = seeds;
    for (const auto& s : rep.classes) partner_seeds(curve, s.theta, more);
    return find_all(curve, so, more);
  }

  Curve curve_at(double t) const {
    Curve curve = [&] {
      try {
        return interpolate(c0_, c1_, t);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::IrregularCurve)
          throw Error(ErrorKind::RegularityLost, "path curve not regular at " + t_string(t));
        throw;
      }
    }();
    const CurveCheck check = regularity_and_embedding_check(curve, kEmbeddingSamples);
    if (!(check.min_self_distance > opts_.min_self_distance * curve.diameter()))
      throw Error(ErrorKind::RegularityLost, "path curve not embedded at " + t_string(t));
    return curve;
  }

  void set_expected_parity(std::size_t p) { expected_parity_ = p; }

 private:
  static void partner_seeds(const Curve& curve, const Angles4& theta,
                            std::vector<Angles4>& out) {
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(jacobian(curve, theta), Eigen::ComputeFullV);
    const Eigen::Vector4d dir = svd.matrixV().col(3);
    for (double s : {0.003, 0.01, 0.03, 0.1, 0.3}) {
      for (double sign : {-1.0, 1.0}) {
        Angles4 cand;
        for (int i = 0; i < 4; ++i) cand[i] = wrap_angle(theta[i] + sign * s * dir[i]);
        if (ordered_component_check(cand)) out.push_back(cand);
      }
    }
  }

  const Curve& c0_;
  const Curve& c1_;
  const TrackOptions& opts_;
  std::size_t expected_parity_ = 1;
};

std::vector<Angles4> thetas(const SolveReport& r) {
  std::vector<Angles4> out;
  for (const auto& s : r.classes) out.push_back(s.theta);
  return out;
}

std::vector<Angles4> merged_seeds(const SolveReport& a, const SolveReport& b) {
  std::vector<Angles4> out = thetas(a);
  for (const auto& s : b.classes) out.push_back(s.theta);
  return out;
}

void emit_event(double t_lo, const SolveReport& lo, double t_hi, const SolveReport& hi,
                double floor, std::vector<TraceEvent>& events) {
  TraceEvent ev;
  ev.t_lo = t_lo;
  ev.t_hi = t_hi;
  ev.count_before = static_cast<int>(lo.classes.size());
  ev.count_after = static_cast<int>(hi.classes.size());
  const int delta = ev.count_after - ev.count_before;
  ev.kind = delta == 2 ? EventKind::Birth : delta == -2 ? EventKind::Death : EventKind::Fold;
  const ClassMatching m = match_classes(lo.classes, hi.classes, floor);
  for (int i : m.unmatched_before) ev.classes.push_back(lo.classes[i].theta);
  for (int i : m.unmatched_after) ev.classes.push_back(hi.classes[i].theta);
  events.push_back(std::move(ev));
}

void localize(const PathSolver& solver, const TrackOptions& opts, double t_lo,
              const SolveReport& lo, double t_hi, const SolveReport& hi, int depth,
              std::vector<TraceEvent>& events) {
  const double floor = 10.0 * opts.solver.dedup_radius;
  if (t_hi - t_lo <= opts.event_tolerance || depth > 40) {
    emit_event(t_lo, lo, t_hi, hi, floor, events);
    return;
  }
  const double t_mid = 0.5 * (t_lo + t_hi);
  const SolveReport mid = solver.solve(t_mid, merged_seeds(lo, hi), false);
  const auto n_lo = lo.classes.size(), n_mid = mid.classes.size(), n_hi = hi.classes.size();
  if (n_mid == n_lo) {
    localize(solver, opts, t_mid, mid, t_hi, hi, depth + 1, events);
  } else if (n_mid == n_hi) {
    localize(solver, opts, t_lo, lo, t_mid, mid, depth + 1, events);
  } else {
    localize(solver, opts, t_lo, lo, t_mid, mid, depth + 1, events);
    localize(solver, opts, t_mid, mid, t_hi, hi, depth + 1, events);
  }
}

}  // namespace

Curve interpolate(const Curve& c0, const Curve& c1, double t) {
  if (c0.dim() != c1.dim())
    throw Error(ErrorKind::DimensionMismatch, "cannot interpolate curves of different dimension");
  if (!(t >= 0.0 && t <= 1.0))
    throw Error(ErrorKind::InvalidArgument, "interpolation parameter must lie in [0, 1]");
  const std::size_t h = std::max(c0.harmonics(), c1.harmonics());
  std::vector<FourierCoord> coords(c0.dim());
  for (int d = 0; d < c0.dim(); ++d) {
    const auto& a = c0.coords()[d];
    const auto& b = c1.coords()[d];
    auto at = [](const std::vector<double>& v, std::size_t i) { return i < v.size() ? v[i] : 0.0; };
    coords[d].a0 = (1.0 - t) * a.a0 + t * b.a0;
    coords[d].cos.resize(h);
    coords[d].sin.resize(h);
    for (std::size_t i = 0; i < h; ++i) {
      coords[d].cos[i] = (1.0 - t) * at(a.cos, i) + t * at(b.cos, i);
      coords[d].sin[i] = (1.0 - t) * at(a.sin, i) + t * at(b.sin, i);
    }
  }
  return Curve(std::move(coords));
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Birth: return "Birth";
    case EventKind::Death: return "Death";
    case EventKind::Fold: return "Fold";
  }
  return "Unknown";
}

std::vector<int> ContinuationTrace::class_counts() const {
  std::vector<int> out;
  for (const auto& r : reports) out.push_back(static_cast<int>(r.classes.size()));
  return out;
}

bool ContinuationTrace::parity_constant() const {
  std::optional<int> seen;
  for (const auto& p : parity_per_step) {
    if (!p) continue;
    if (seen && *seen != *p) return false;
    seen = p;
  }
  return true;
}

ClassMatching match_classes(const std::vector<Solution>& before,
                            const std::vector<Solution>& after, double floor) {
  struct Cand {
    double d;
    int i, j;
  };
  std::vector<Cand> cands;
  for (int i = 0; i < static_cast<int>(before.size()); ++i)
    for (int j = 0; j < static_cast<int>(after.size()); ++j)
      cands.push_back({class_distance(before[i].theta, after[j].theta), i, j});
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    return a.d != b.d ? a.d < b.d : (a.i != b.i ? a.i < b.i : a.j < b.j);
  });

  std::vector<char> used_i(before.size(), 0), used_j(after.size(), 0);
  std::vector<Cand> greedy;
  for (const auto& c : cands) {
    if (used_i[c.i] || used_j[c.j]) continue;
    used_i[c.i] = used_j[c.j] = 1;
    greedy.push_back(c);
  }

  double threshold = floor;
  if (!greedy.empty()) {
    std::vector<double> d;
    for (const auto& c : greedy) d.push_back(c.d);
    std::nth_element(d.begin(), d.begin() + d.size() / 2, d.end());
    threshold = std::max(floor, 10.0 * d[d.size() / 2]);
  }

  ClassMatching out;
  std::fill(used_i.begin(), used_i.end(), 0);
  std::fill(used_j.begin(), used_j.end(), 0);
  for (const auto& c : greedy) {
    if (c.d > threshold) continue;
    out.pairs.emplace_back(c.i, c.j);
    used_i[c.i] = used_j[c.j] = 1;
  }
  for (int i = 0; i < static_cast<int>(before.size()); ++i)
    if (!used_i[i]) out.unmatched_before.push_back(i);
  for (int j = 0; j < static_cast<int>(after.size()); ++j)
    if (!used_j[j]) out.unmatched_after.push_back(j);
  return out;
}

ContinuationTrace track(const Curve& c0, const Curve& c1, const TrackOptions& opts) {
  if (opts.steps < 1) throw Error(ErrorKind::InvalidArgument, "track needs at least one step");
  PathSolver solver(c0, c1, opts);
  ContinuationTrace trace;

  auto record = [&](double t, SolveReport rep) {
    trace.t.push_back(t);
    trace.parity_per_step.push_back(rep.parity);
    trace.reports.push_back(std::move(rep));
  };

  SolveReport first = find_all(solver.curve_at(0.0), opts.solver);
  if (!first.parity) throw Error(ErrorKind::NonTransversePath, "start curve is not transverse at t=0");
  solver.set_expected_parity(static_cast<std::size_t>(*first.parity));
  record(0.0, std::move(first));

  const double floor = 10.0 * opts.solver.dedup_radius;
  for (int i = 1; i <= opts.steps; ++i) {
    const double t_prev = trace.t.back();
    double t = static_cast<double>(i) / opts.steps;
    const bool endpoint = i == opts.steps;
    const SolveReport& prev = trace.reports.back();
    SolveReport rep = solver.solve(t, thetas(prev), endpoint);
    if (!rep.parity) {
      if (endpoint) throw Error(ErrorKind::NonTransversePath, "target curve is not transverse at t=1");
      const double t_alt = 0.5 * (t_prev + t);
      rep = solver.solve(t_alt, thetas(prev), false);
      if (!rep.parity)
        throw Error(ErrorKind::NonTransversePath, "no transverse solve near " + t_string(t));
      t = t_alt;
      ++trace.refined_steps;
    }

    const ClassMatching m = match_classes(prev.classes, rep.classes, floor);
    if (rep.classes.size() != prev.classes.size()) {
      const SolveReport prev_copy = prev;
      localize(solver, opts, t_prev, prev_copy, t, rep, 0, trace.events);
    } else if (!m.unmatched_before.empty() || !m.unmatched_after.empty()) {
      emit_event(t_prev, prev, t, rep, floor, trace.events);
    }
    record(t, std::move(rep));
  }
  return trace;
}

}  // namespace sqpeg
