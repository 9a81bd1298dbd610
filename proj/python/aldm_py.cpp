#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "aldm/aldm_core.hpp"
#include "aldm/errors.hpp"
#include "aldm/harness.hpp"
#include "aldm/quadratic.hpp"
#include "aldm/scenario.hpp"
#include "aldm/trajectory.hpp"

namespace py = pybind11;

namespace {

using XY = std::pair<double, double>;

std::vector<aldm::PointXY> to_points(const std::vector<XY>& xy) {
  std::vector<aldm::PointXY> out;
  out.reserve(xy.size());
  for (const auto& [x, y] : xy) out.push_back({x, y, 0.0});
  return out;
}

py::dict traced_dict(const aldm::TracedLine& line) {
  py::list points;
  for (std::size_t i = 0; i < line.points.size(); ++i) {
    const auto& p = line.points[i];
    const auto& src = line.provenance[i];
    points.append(py::make_tuple(p.x, p.y, src.truth_label, src.line_id, src.point_index));
  }
  py::dict d;
  d["role"] = aldm::to_string(line.role);
  d["points"] = points;
  d["preview"] = line.preview();
  d["warnings"] = line.warnings;
  return d;
}

std::string run_to_json(const aldm::Scenario& scenario, unsigned threads, const std::string& out_dir, bool plots) {
  aldm::RunOptions options;
  options.threads = threads;
  const aldm::ScenarioResult result = aldm::run_scenario(scenario, options);
  if (!out_dir.empty()) aldm::write_outputs(result, out_dir, plots);
  return aldm::report_json(result);
}

}  // namespace

PYBIND11_MODULE(_aldm, m) {
  m.doc() = "Lane detection on fragmented line-sensor point clouds";

  auto base = py::register_exception<aldm::Error>(m, "AldmError", PyExc_RuntimeError);
  py::register_exception<aldm::ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<aldm::InvalidSpec>(m, "InvalidSpec", base.ptr());
  py::register_exception<aldm::DegenerateInput>(m, "DegenerateInput", base.ptr());
  py::register_exception<aldm::LaneDetectionFailure>(m, "LaneDetectionFailure", base.ptr());

  py::class_<aldm::SensorConfig>(m, "SensorConfig")
      .def(py::init<>())
      .def_readwrite("ld_range", &aldm::SensorConfig::ld_range)
      .def_readwrite("dx", &aldm::SensorConfig::dx)
      .def_readwrite("near_offset", &aldm::SensorConfig::near_offset)
      .def_readwrite("max_lines", &aldm::SensorConfig::max_lines)
      .def_readwrite("max_points_per_line", &aldm::SensorConfig::max_points_per_line)
      .def_readwrite("lateral_window", &aldm::SensorConfig::lateral_window)
      .def_readwrite("merge_markings", &aldm::SensorConfig::merge_markings)
      .def_readwrite("noise_sigma", &aldm::SensorConfig::noise_sigma)
      .def_readwrite("noise_seed", &aldm::SensorConfig::noise_seed)
      .def("samples_per_line", &aldm::SensorConfig::samples_per_line)
      .def("point_capacity", &aldm::SensorConfig::point_capacity);

  py::class_<aldm::AldmParams>(m, "AldmParams")
      .def(py::init<>())
      .def_readwrite("max_gap", &aldm::AldmParams::max_gap)
      .def_readwrite("seed_max_x", &aldm::AldmParams::seed_max_x)
      .def_readwrite("seed_min_separation", &aldm::AldmParams::seed_min_separation)
      .def_readwrite("min_preview", &aldm::AldmParams::min_preview)
      .def_readwrite("adjacent_min_lateral", &aldm::AldmParams::adjacent_min_lateral)
      .def_readwrite("output_points", &aldm::AldmParams::output_points)
      .def_readwrite("max_residual", &aldm::AldmParams::max_residual)
      .def_readwrite("residual_tie_tolerance", &aldm::AldmParams::residual_tie_tolerance);

  m.def("builtin_scenario_names", &aldm::builtin_scenario_names);
  m.def("builtin_config", [](const std::string& name) { return aldm::to_config_text(aldm::builtin_scenario(name)); },
        py::arg("name"), "INI text of a built-in scenario");

  m.def("fit_quadratic",
        [](XY a, XY b, XY c) {
          const auto q = aldm::fit_quadratic({a.first, a.second, 0}, {b.first, b.second, 0}, {c.first, c.second, 0});
          return py::make_tuple(q.a, q.b, q.c);
        },
        py::arg("a"), py::arg("b"), py::arg("c"), "Coefficients (a, b, c) of y = a x^2 + b x + c");

  m.def("fit_cubic",
        [](const std::vector<XY>& xy) {
          const auto c = aldm::fit_cubic(to_points(xy));
          return py::make_tuple(c.c0, c.c1, c.c2, c.c3);
        },
        py::arg("points"), "Least-squares coefficients (c0, c1, c2, c3)");

  m.def("detect_frame",
        [](const std::string& name, int frame) {
          const aldm::Scenario s = aldm::builtin_scenario(name);
          const aldm::RoadGeometry road(s.road);
          const auto poses = s.poses(road);
          if (frame < 0 || frame >= static_cast<int>(poses.size())) throw py::index_error("frame out of range");
          const aldm::SensorCloud cloud = aldm::sense(road, poses[static_cast<std::size_t>(frame)], s.sensor);
          const aldm::LaneSet lanes = aldm::detect_lanes(cloud, s.aldm);
          py::dict out;
          for (const aldm::TracedLine* line : lanes.lines()) out[aldm::to_string(line->role)] = traced_dict(*line);
          return out;
        },
        py::arg("name"), py::arg("frame") = 0, "Traced lines of one frame of a built-in scenario");

  m.def("run_builtin_json",
        [](const std::string& name, unsigned threads, const std::string& out_dir, bool plots) {
          const aldm::Scenario s = aldm::builtin_scenario(name);
          py::gil_scoped_release release;
          return run_to_json(s, threads, out_dir, plots);
        },
        py::arg("name"), py::arg("threads") = 0, py::arg("out_dir") = "", py::arg("plots") = false);

  m.def("run_config_json",
        [](const std::string& text, unsigned threads, const std::string& out_dir, bool plots) {
          std::istringstream in(text);
          const aldm::Scenario s = aldm::parse_scenario(in);
          py::gil_scoped_release release;
          return run_to_json(s, threads, out_dir, plots);
        },
        py::arg("text"), py::arg("threads") = 0, py::arg("out_dir") = "", py::arg("plots") = false);
}
