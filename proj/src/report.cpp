#include "sqpeg/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "sqpeg/curve_io.hpp"
#include "sqpeg/error.hpp"

namespace sqpeg {

namespace {

using nlohmann::json;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt6(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

json classes_json(const std::vector<Solution>& classes) {
  json out = json::array();
  for (const auto& s : classes) out.push_back(solution_to_json(s));
  return out;
}

json flags_json(const SolveReport& r) {
  json out = json::array();
  for (auto f : r.flags) out.push_back(std::string(to_string(f)));
  return out;
}

}  // namespace

std::string parity_string(const SolveReport& report) {
  if (!report.parity) return "withheld";
  return *report.parity ? "odd" : "even";
}

json options_to_json(const SolveOptions& o) {
  return {{"grid", o.grid},
          {"tol", o.tol_residual},
          {"max_iters", o.max_iters},
          {"dedup_eps", o.dedup_radius},
          {"sep_guard", o.sep_guard},
          {"det_threshold", o.det_threshold},
          {"threads", o.threads}};
}

json solution_to_json(const Solution& s) {
  json pts = json::array();
  for (int i = 0; i < 4; ++i) {
    const Vec& p = s.points.point(i);
    pts.push_back(std::vector<double>(p.data(), p.data() + p.size()));
  }
  return {{"theta", s.theta},
          {"points", pts},
          {"residual", s.residual_norm},
          {"jac_det", s.jac_det},
          {"transverse", s.transverse},
          {"min_separation", s.min_separation}};
}

json report_to_json(const Curve& curve, const SolveOptions& opts, const SolveReport& r) {
  return {{"curve_hash", curve_hash(curve)},
          {"curve", curve_to_json(curve)},
          {"options", options_to_json(opts)},
          {"classes", classes_json(r.classes)},
          {"labeled_count", r.labeled_count},
          {"all_transverse", r.all_transverse},
          {"parity", parity_string(r)},
          {"flags", flags_json(r)},
          {"seeds", r.seeds},
          {"converged", r.converged},
          {"timings", {{"solve_seconds", r.seconds}}}};
}

json trace_to_json(const Curve& c0, const Curve& c1, const TrackOptions& opts,
                   const ContinuationTrace& trace) {
  json steps = json::array();
  for (std::size_t i = 0; i < trace.reports.size(); ++i) {
    const auto& r = trace.reports[i];
    steps.push_back({{"t", trace.t[i]},
                     {"count", r.classes.size()},
                     {"parity", parity_string(r)},
                     {"flags", flags_json(r)},
                     {"classes", classes_json(r.classes)}});
  }
  json events = json::array();
  for (const auto& e : trace.events) {
    events.push_back({{"t_lo", e.t_lo},
                      {"t_hi", e.t_hi},
                      {"kind", std::string(to_string(e.kind))},
                      {"count_before", e.count_before},
                      {"count_after", e.count_after},
                      {"classes", e.classes}});
  }
  return {{"start_hash", curve_hash(c0)},
          {"target_hash", curve_hash(c1)},
          {"steps", opts.steps},
          {"event_tolerance", opts.event_tolerance},
          {"options", options_to_json(opts.solver)},
          {"parity_constant", trace.parity_constant()},
          {"refined_steps", trace.refined_steps},
          {"trace", steps},
          {"events", events}};
}

std::string report_to_csv(const SolveReport& r) {
  std::ostringstream out;
  const int dim = r.classes.empty() ? 0 : r.classes.front().points.dim();
  out << "class,vertex,theta";
  for (int d = 1; d <= dim; ++d) out << ",x" << d;
  out << '\n';
  for (std::size_t c = 0; c < r.classes.size(); ++c) {
    const auto& s = r.classes[c];
    for (int i = 0; i < 4; ++i) {
      out << c << ',' << i + 1 << ',' << fmt17(s.theta[i]);
      const Vec& p = s.points.point(i);
      for (int d = 0; d < p.size(); ++d) out << ',' << fmt17(p[d]);
      out << '\n';
    }
  }
  return out.str();
}

std::string report_to_svg(const Curve& curve, const SolveReport& r) {
  if (curve.dim() != 2) throw Error(ErrorKind::DimensionMismatch, "SVG output needs a plane curve");
  constexpr int kSamples = 1024;
  std::vector<Vec> pts;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (int i = 0; i < kSamples; ++i) {
    Vec p = curve.eval(kTwoPi * i / kSamples);
    xmin = std::min(xmin, p[0]);
    xmax = std::max(xmax, p[0]);
    ymin = std::min(ymin, p[1]);
    ymax = std::max(ymax, p[1]);
    pts.push_back(std::move(p));
  }
  const double mx = 0.05 * (xmax - xmin), my = 0.05 * (ymax - ymin);
  const double w = xmax - xmin + 2 * mx, h = ymax - ymin + 2 * my;
  const double stroke = 0.004 * std::max(w, h);
  // y is flipped so the picture has the usual orientation
  auto xy = [&](const Vec& p) { return fmt6(p[0]) + "," + fmt6(-p[1]); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt6(xmin - mx) << ' '
      << fmt6(-(ymax + my)) << ' ' << fmt6(w) << ' ' << fmt6(h) << "\">\n";
  out << "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"" << fmt6(stroke)
      << "\" points=\"";
  for (const auto& p : pts) out << xy(p) << ' ';
  out << xy(pts.front()) << "\"/>\n";
  for (std::size_t c = 0; c < r.classes.size(); ++c) {
    const double hue = std::fmod(137.508 * static_cast<double>(c), 360.0);
    out << "  <polygon fill=\"none\" stroke=\"hsl(" << fmt6(hue) << ",70%,45%)\" stroke-width=\""
        << fmt6(stroke) << "\" points=\"";
    for (int i = 0; i < 4; ++i) out << (i ? " " : "") << xy(r.classes[c].points.point(i));
    out << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace sqpeg
