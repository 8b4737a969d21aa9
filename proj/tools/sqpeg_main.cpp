// sqpeg: find, certify and track square-like quadrilaterals on closed curves.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <Eigen/LU>
#include <json.hpp>

#include "sqpeg/config.hpp"
#include "sqpeg/continuation.hpp"
#include "sqpeg/curve_io.hpp"
#include "sqpeg/error.hpp"
#include "sqpeg/report.hpp"
#include "sqpeg/slq.hpp"
#include "sqpeg/solver.hpp"
#include "sqpeg/verify.hpp"

namespace {

using nlohmann::json;
using namespace sqpeg;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kDegenerate = 2;

struct Paths {
  std::string curve, target, json, svg, csv;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << text;
}

void emit_json(const Paths& p, const json& doc) {
  if (p.json.empty())
    std::cout << doc.dump(2) << '\n';
  else
    write_file(p.json, doc.dump(2) + "\n");
}

int exit_for(const SolveReport& r) {
  return r.has_flag(SolveFlag::NonTransverse) || r.has_flag(SolveFlag::ContinuumSuspected)
             ? kDegenerate
             : kOk;
}

int run_find(const Paths& p, const SolveOptions& opts) {
  const Curve curve = load_curve(p.curve);
  const SolveReport r = find_all(curve, opts);
  emit_json(p, report_to_json(curve, opts, r));
  if (!p.csv.empty()) write_file(p.csv, report_to_csv(r));
  if (!p.svg.empty()) {
    if (curve.dim() == 2)
      write_file(p.svg, report_to_svg(curve, r));
    else
      std::cerr << "note: --svg ignored for a curve in R^" << curve.dim() << '\n';
  }
  if (!p.json.empty())
    std::cerr << r.classes.size() << " classes, parity " << parity_string(r) << '\n';
  return exit_for(r);
}

int run_strata(const Paths& p, const SolveOptions& opts) {
  const Curve curve = load_curve(p.curve);
  const SolveReport r = find_all(curve, opts);
  const CurveCheck check = regularity_and_embedding_check(curve);
  json rows = json::array();
  for (const auto& s : r.classes) {
    const Stratum st = strata_proximity(s.points, curve.diameter());
    rows.push_back({{"theta", s.theta},
                    {"stratum", st.label},
                    {"codim", st.codim},
                    {"min_separation", s.min_separation},
                    {"transverse", s.transverse}});
  }
  json doc = {{"curve_hash", curve_hash(curve)},
              {"curve_check",
               {{"min_speed", check.min_speed},
                {"min_self_distance", check.min_self_distance},
                {"diameter", curve.diameter()}}},
              {"classes", rows},
              {"parity", parity_string(r)},
              {"flags", json::array()}};
  for (auto f : r.flags) doc["flags"].push_back(std::string(to_string(f)));
  emit_json(p, doc);
  return exit_for(r);
}

int run_verify_ellipse(const Paths& p, double a, double b) {
  const Eigen::Matrix4d m = ellipse_dg_matrix(a, b);
  const Eigen::Matrix4d mu = mu_pushforward_dg_matrix(a, b);
  const double expected = 8.0 * (a * a * a * a - b * b * b * b) / (a * a * b * b);
  const Config4 sq = ellipse_square(a, b);
  const Angles4 th = ellipse_square_angles(a, b);
  const QuadMeasurements meas = measurements(sq);

  auto mat_json = [](const Eigen::Matrix4d& x) {
    json rows = json::array();
    for (int i = 0; i < 4; ++i) rows.push_back({x(i, 0), x(i, 1), x(i, 2), x(i, 3)});
    return rows;
  };
  json verts = json::array();
  for (int i = 0; i < 4; ++i) verts.push_back({{"theta", th[i]}, {"x", sq.point(i)[0]}, {"y", sq.point(i)[1]}});
  const double det = m.determinant();
  const bool ok = std::abs(det - expected) <= 1e-9 * std::abs(expected) &&
                  std::abs(mu.determinant() - expected) <= 1e-9 * std::abs(expected);
  json doc = {{"a", a},
              {"b", b},
              {"det", det},
              {"det_expected", expected},
              {"pushforward_det", mu.determinant()},
              {"dg_matrix", mat_json(m)},
              {"pushforward_matrix", mat_json(mu)},
              {"side", meas.side},
              {"vertices", verts},
              {"passed", ok}};

  std::printf("det %.12g (expected %.12g)\n", det, expected);
  std::printf("%-8s %-16s %-16s %-16s\n", "vertex", "theta", "x", "y");
  for (int i = 0; i < 4; ++i)
    std::printf("p%-7d %-16.12f %-16.12f %-16.12f\n", i + 1, th[i], sq.point(i)[0], sq.point(i)[1]);
  std::printf("side %.12f\n", meas.side);
  if (!p.json.empty()) write_file(p.json, doc.dump(2) + "\n");
  if (!p.csv.empty()) {
    std::string csv = "vertex,theta,x,y\n";
    char buf[128];
    for (int i = 0; i < 4; ++i) {
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", i + 1, th[i], sq.point(i)[0], sq.point(i)[1]);
      csv += buf;
    }
    write_file(p.csv, csv);
  }
  return ok ? kOk : kDegenerate;
}

int run_equivalence(const Paths& p, int trials, std::uint64_t seed) {
  const EquivalenceReport r = equivalence_harness(trials, seed);
  json doc = {{"trials", r.trials},
              {"seed", seed},
              {"max_g_residual_on_slq", r.max_g_residual_on_slq},
              {"max_f_residual_on_slq", r.max_f_residual_on_slq},
              {"min_g_residual_off_slq", r.min_g_residual_off_slq},
              {"min_f_residual_off_slq", r.min_f_residual_off_slq},
              {"min_violation", r.min_violation},
              {"passed", r.passed}};
  emit_json(p, doc);
  return r.passed ? kOk : kDegenerate;
}

int run_track(const Paths& p, const SolveOptions& opts, int steps) {
  const Curve c0 = load_curve(p.curve);
  const Curve c1 = load_curve(p.target);
  TrackOptions to;
  to.steps = steps;
  to.solver = opts;
  try {
    const ContinuationTrace trace = track(c0, c1, to);
    emit_json(p, trace_to_json(c0, c1, to, trace));
    if (!p.csv.empty()) {
      std::string csv = "t,count,parity\n";
      for (std::size_t i = 0; i < trace.t.size(); ++i) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.17g,%zu,%s\n", trace.t[i], trace.reports[i].classes.size(),
                      parity_string(trace.reports[i]).c_str());
        csv += buf;
      }
      write_file(p.csv, csv);
    }
    return trace.parity_constant() ? kOk : kDegenerate;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NonTransversePath) throw;
    std::cerr << e.what() << '\n';
    return kDegenerate;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Square-like quadrilaterals inscribed in closed Fourier curves"};
  app.require_subcommand(1, 1);

  Paths paths;
  SolveOptions opts;
  int steps = 64;
  int trials = 1000;
  std::uint64_t seed = 1;
  double a = 2.0, b = 1.0;

  auto solver_flags = [&](CLI::App* sub) {
    sub->add_option("--grid", opts.grid, "seed grid points per axis")->check(CLI::Range(4, 4096));
    sub->add_option("--tol", opts.tol_residual, "Newton residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--dedup-eps", opts.dedup_radius, "class merge radius in theta")->check(CLI::PositiveNumber);
    sub->add_option("--sep-guard", opts.sep_guard, "min vertex separation / diameter")->check(CLI::NonNegativeNumber);
    sub->add_option("--det-threshold", opts.det_threshold, "relative Jacobian determinant floor")->check(CLI::PositiveNumber);
    sub->add_option("--threads", opts.threads, "worker threads")->check(CLI::Range(1, 256));
  };
  auto out_flags = [&](CLI::App* sub) {
    sub->add_option("--json", paths.json, "JSON output (default stdout)");
    sub->add_option("--csv", paths.csv, "CSV output");
  };

  auto* find = app.add_subcommand("find", "solve for all inscribed square-like quadrilaterals");
  find->add_option("--curve", paths.curve, "curve JSON")->required()->check(CLI::ExistingFile);
  solver_flags(find);
  out_flags(find);
  find->add_option("--svg", paths.svg, "SVG drawing (plane curves)");

  auto* ver = app.add_subcommand("verify-ellipse", "closed-form checks at the ellipse square");
  ver->add_option("--a", a, "semi-axis along x")->check(CLI::PositiveNumber);
  ver->add_option("--b", b, "semi-axis along y")->check(CLI::PositiveNumber);
  out_flags(ver);

  auto* eq = app.add_subcommand("equivalence", "randomized g/f agreement harness");
  eq->add_option("--trials", trials)->check(CLI::PositiveNumber);
  eq->add_option("--seed", seed);
  out_flags(eq);

  auto* tr = app.add_subcommand("track", "follow solutions along a linear path of curves");
  tr->add_option("--curve", paths.curve, "start curve JSON")->required()->check(CLI::ExistingFile);
  tr->add_option("--target", paths.target, "target curve JSON")->required()->check(CLI::ExistingFile);
  tr->add_option("--steps", steps)->check(CLI::Range(1, 100000));
  solver_flags(tr);
  out_flags(tr);

  auto* st = app.add_subcommand("strata-report", "boundary proximity of each solution");
  st->add_option("--curve", paths.curve, "curve JSON")->required()->check(CLI::ExistingFile);
  solver_flags(st);
  out_flags(st);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*find) return run_find(paths, opts);
    if (*ver) return run_verify_ellipse(paths, a, b);
    if (*eq) return run_equivalence(paths, trials, seed);
    if (*tr) return run_track(paths, opts, steps);
    if (*st) return run_strata(paths, opts);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::NonTransversePath:
      case ErrorKind::RegularityLost:
        return kDegenerate;
      default:
        return kInputError;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
