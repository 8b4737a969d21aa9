#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sqpeg/config.hpp"
#include "sqpeg/continuation.hpp"
#include "sqpeg/curve.hpp"
#include "sqpeg/curve_io.hpp"
#include "sqpeg/error.hpp"
#include "sqpeg/report.hpp"
#include "sqpeg/slq.hpp"
#include "sqpeg/solver.hpp"
#include "sqpeg/verify.hpp"

namespace py = pybind11;
using namespace sqpeg;

namespace {

std::vector<double> to_list(const Vec& v) { return {v.data(), v.data() + v.size()}; }

Vec to_vec(const std::vector<double>& xs) {
  if (xs.empty() || xs.size() > static_cast<std::size_t>(kMaxDim))
    throw Error(ErrorKind::InvalidArgument, "point dimension must be in 1.." + std::to_string(kMaxDim));
  Vec v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v[i] = xs[i];
  return v;
}

Config4 to_config(const std::vector<std::vector<double>>& pts) {
  if (pts.size() != 4) throw Error(ErrorKind::InvalidArgument, "expected four points");
  return Config4({to_vec(pts[0]), to_vec(pts[1]), to_vec(pts[2]), to_vec(pts[3])});
}

std::vector<std::vector<double>> from_config(const Config4& c) {
  std::vector<std::vector<double>> out;
  for (int i = 0; i < 4; ++i) out.push_back(to_list(c.point(i)));
  return out;
}

py::dict solution_dict(const Solution& s) {
  py::dict d;
  d["theta"] = s.theta;
  d["points"] = from_config(s.points);
  d["residual"] = s.residual_norm;
  d["jac_det"] = s.jac_det;
  d["transverse"] = s.transverse;
  d["min_separation"] = s.min_separation;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "sqpeg native core";
  m.attr("__version__") = "0.1.0";

  static py::exception<Error> exc(m, "SqpegError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(exc.ptr(), py::make_tuple(e.what(), std::string(to_string(e.kind()))).ptr());
    }
  });

  py::class_<FourierCoord>(m, "FourierCoord")
      .def(py::init([](double a0, std::vector<double> cos, std::vector<double> sin) {
             return FourierCoord{a0, std::move(cos), std::move(sin)};
           }),
           py::arg("a0") = 0.0, py::arg("cos"), py::arg("sin"))
      .def_readwrite("a0", &FourierCoord::a0)
      .def_readwrite("cos", &FourierCoord::cos)
      .def_readwrite("sin", &FourierCoord::sin);

  py::class_<Curve>(m, "Curve")
      .def(py::init<std::vector<FourierCoord>>(), py::arg("coords"))
      .def_property_readonly("dim", &Curve::dim)
      .def_property_readonly("harmonics", &Curve::harmonics)
      .def_property_readonly("coords", &Curve::coords)
      .def_property_readonly("diameter", &Curve::diameter)
      .def("eval", [](const Curve& c, double t) { return to_list(c.eval(t)); }, py::arg("theta"))
      .def("deriv", [](const Curve& c, double t) { return to_list(c.deriv(t)); }, py::arg("theta"))
      .def("__eq__", &Curve::operator==)
      .def("to_json", [](const Curve& c) { return curve_to_json(c).dump(); })
      .def_static("from_json", [](const std::string& s) {
        nlohmann::json doc;
        try {
          doc = nlohmann::json::parse(s);
        } catch (const nlohmann::json::exception& e) {
          throw Error(ErrorKind::MalformedInput, e.what());
        }
        return curve_from_json(doc);
      });

  m.def("make_ellipse", &make_ellipse, py::arg("a"), py::arg("b"));
  m.def("perturb", &perturb, py::arg("curve"), py::arg("amplitude"), py::arg("max_harmonic"), py::arg("seed"));
  m.def("load_curve", [](const std::string& p) { return load_curve(p); }, py::arg("path"));
  m.def("curve_hash", &curve_hash);
  m.def("interpolate", &interpolate, py::arg("c0"), py::arg("c1"), py::arg("t"));
  m.def(
      "regularity_and_embedding_check",
      [](const Curve& c, int samples) {
        const CurveCheck r = regularity_and_embedding_check(c, samples);
        py::dict d;
        d["min_speed"] = r.min_speed;
        d["min_self_distance"] = r.min_self_distance;
        return d;
      },
      py::arg("curve"), py::arg("samples") = kDefaultCheckSamples);

  // configurations are plain lists of four points
  m.def("g_map", [](const std::vector<std::vector<double>>& p) { return g_map(to_config(p)); });
  m.def("f_map", [](const std::vector<std::vector<double>>& p) { return f_map(to_config(p)); });
  m.def("make_bent_rhombus", [](double h) { return from_config(make_bent_rhombus(h)); });
  m.def("strata_label", [](const std::vector<std::vector<double>>& p, double scale, double eps) {
    return strata_proximity(to_config(p), scale, eps).label;
  }, py::arg("points"), py::arg("scale"), py::arg("eps") = kDefaultStrataEps);
  m.def("ordered_component_check", &ordered_component_check);
  m.def("block_cycle_orientation_sign", &block_cycle_orientation_sign);

  py::class_<SolveOptions>(m, "SolveOptions")
      .def(py::init<>())
      .def_readwrite("grid", &SolveOptions::grid)
      .def_readwrite("tol_residual", &SolveOptions::tol_residual)
      .def_readwrite("max_iters", &SolveOptions::max_iters)
      .def_readwrite("dedup_radius", &SolveOptions::dedup_radius)
      .def_readwrite("sep_guard", &SolveOptions::sep_guard)
      .def_readwrite("det_threshold", &SolveOptions::det_threshold)
      .def_readwrite("threads", &SolveOptions::threads);

  py::class_<SolveReport>(m, "SolveReport")
      .def_property_readonly("classes", [](const SolveReport& r) {
        py::list out;
        for (const auto& s : r.classes) out.append(solution_dict(s));
        return out;
      })
      .def_readonly("labeled_count", &SolveReport::labeled_count)
      .def_readonly("all_transverse", &SolveReport::all_transverse)
      .def_readonly("parity", &SolveReport::parity)
      .def_property_readonly("parity_label", [](const SolveReport& r) { return parity_string(r); })
      .def_property_readonly("flags", [](const SolveReport& r) {
        std::vector<std::string> out;
        for (auto f : r.flags) out.emplace_back(to_string(f));
        return out;
      })
      .def_readonly("seconds", &SolveReport::seconds);

  m.def("find_all", [](const Curve& c, const SolveOptions& o) {
    py::gil_scoped_release release;
    return find_all(c, o);
  }, py::arg("curve"), py::arg("options") = SolveOptions{});
  m.def("residual", &residual);
  m.def("jacobian", &jacobian);
  m.def("report_to_json", [](const Curve& c, const SolveOptions& o, const SolveReport& r) {
    return report_to_json(c, o, r).dump();
  });

  m.def("ellipse_square", [](double a, double b) { return from_config(ellipse_square(a, b)); });
  m.def("ellipse_square_angles", &ellipse_square_angles);
  m.def("ellipse_dg_matrix", &ellipse_dg_matrix);
  m.def("mu_pushforward_dg_matrix", &mu_pushforward_dg_matrix, py::arg("a"), py::arg("b"), py::arg("power") = 1);
  m.def("nonplanar_dg_matrix", [](const std::vector<std::vector<double>>& p) { return nonplanar_dg_matrix(to_config(p)); });
  m.def("equivalence_harness", [](int trials, std::uint64_t seed) {
    const EquivalenceReport r = equivalence_harness(trials, seed);
    py::dict d;
    d["trials"] = r.trials;
    d["max_g_residual_on_slq"] = r.max_g_residual_on_slq;
    d["max_f_residual_on_slq"] = r.max_f_residual_on_slq;
    d["min_g_residual_off_slq"] = r.min_g_residual_off_slq;
    d["min_f_residual_off_slq"] = r.min_f_residual_off_slq;
    d["passed"] = r.passed;
    return d;
  }, py::arg("trials"), py::arg("seed"));

  py::class_<TrackOptions>(m, "TrackOptions")
      .def(py::init<>())
      .def_readwrite("steps", &TrackOptions::steps)
      .def_readwrite("event_tolerance", &TrackOptions::event_tolerance)
      .def_readwrite("fresh_grid", &TrackOptions::fresh_grid)
      .def_readwrite("solver", &TrackOptions::solver);

  py::class_<ContinuationTrace>(m, "ContinuationTrace")
      .def_readonly("t", &ContinuationTrace::t)
      .def_readonly("parity_per_step", &ContinuationTrace::parity_per_step)
      .def_property_readonly("class_counts", &ContinuationTrace::class_counts)
      .def_property_readonly("parity_constant", &ContinuationTrace::parity_constant)
      .def_property_readonly("events", [](const ContinuationTrace& tr) {
        py::list out;
        for (const auto& e : tr.events) {
          py::dict d;
          d["t_lo"] = e.t_lo;
          d["t_hi"] = e.t_hi;
          d["kind"] = std::string(to_string(e.kind));
          d["count_before"] = e.count_before;
          d["count_after"] = e.count_after;
          out.append(d);
        }
        return out;
      });

  m.def("track", [](const Curve& c0, const Curve& c1, const TrackOptions& o) {
    py::gil_scoped_release release;
    return track(c0, c1, o);
  }, py::arg("c0"), py::arg("c1"), py::arg("options") = TrackOptions{});
}
