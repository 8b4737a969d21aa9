#pragma once

#include <string>

#include <json.hpp>

#include "sqpeg/continuation.hpp"
#include "sqpeg/solver.hpp"

namespace sqpeg {

std::string parity_string(const SolveReport& report);  // "odd", "even" or "withheld"

nlohmann::json options_to_json(const SolveOptions& opts);
nlohmann::json solution_to_json(const Solution& s);
nlohmann::json report_to_json(const Curve& curve, const SolveOptions& opts,
                              const SolveReport& report);
nlohmann::json trace_to_json(const Curve& c0, const Curve& c1, const TrackOptions& opts,
                             const ContinuationTrace& trace);

// One row per labeled vertex: class,vertex,theta,x1..xk
std::string report_to_csv(const SolveReport& report);

// One closed polyline for the curve (1024 samples) and one polygon per class.
// Plane curves only; throws DimensionMismatch otherwise.
std::string report_to_svg(const Curve& curve, const SolveReport& report);

}  // namespace sqpeg
