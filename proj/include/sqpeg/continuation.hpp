#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "sqpeg/curve.hpp"
#include "sqpeg/solver.hpp"

namespace sqpeg {

// Coefficient-wise (1 - t) c0 + t c1, zero-padding the shorter series.
// Throws DimensionMismatch when the ambient dimensions differ.
Curve interpolate(const Curve& c0, const Curve& c1, double t);

enum class EventKind { Birth, Death, Fold };
std::string_view to_string(EventKind kind);

struct TraceEvent {
  double t_lo = 0.0;
  double t_hi = 0.0;
  EventKind kind = EventKind::Fold;
  int count_before = 0;
  int count_after = 0;
  std::vector<Angles4> classes;  // classes that appeared (Birth) or vanished (Death)
};

struct TrackOptions {
  int steps = 64;
  double event_tolerance = 1e-4;    // bisection width in t
  int fresh_grid = 16;              // grid for intermediate steps; endpoints use solver.grid
  double min_self_distance = 1e-6;  // embedding guard, relative to diameter
  SolveOptions solver;
};

struct ContinuationTrace {
  std::vector<double> t;
  std::vector<SolveReport> reports;
  std::vector<std::optional<int>> parity_per_step;
  std::vector<TraceEvent> events;
  int refined_steps = 0;  // steps re-solved off-grid after a non-transverse result

  std::vector<int> class_counts() const;
  // Parity equal across every step that reported one.
  bool parity_constant() const;
};

// Follows the inscribed square-like quadrilaterals along the linear path
// from c0 to c1. Throws RegularityLost (irregular or non-embedded
// intermediate curve) and NonTransversePath, both naming t.
ContinuationTrace track(const Curve& c0, const Curve& c1, const TrackOptions& opts = {});

// Greedy nearest-theta assignment between consecutive class sets; pairs
// farther than max(10 x median drift, floor) stay unmatched.
struct ClassMatching {
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> unmatched_before;
  std::vector<int> unmatched_after;
};
ClassMatching match_classes(const std::vector<Solution>& before,
                            const std::vector<Solution>& after, double floor);

}  // namespace sqpeg
