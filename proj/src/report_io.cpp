#include <fstream>
#include <sstream>

#include "aldm/errors.hpp"
#include "aldm/harness.hpp"
#include "json.hpp"
#include "text_format.hpp"

namespace aldm {

using json = nlohmann::ordered_json;

namespace {

// Prefix every row of a headerless CSV block.
void prefix_rows(std::ostringstream& out, const std::string& block, const std::string& prefix) {
  std::istringstream lines(block);
  std::string row;
  while (std::getline(lines, row)) out << prefix << row << '\n';
}

TracedLine as_traced(const LineObject& obj, LineRole role) {
  TracedLine line;
  line.role = role;
  line.points = obj.points;
  for (std::size_t i = 0; i < obj.points.size(); ++i) {
    line.provenance.push_back({obj.id, obj.truth_label, obj.marking_type, static_cast<int>(i)});
  }
  return line;
}

json metric(const MetricSummary& m) {
  if (m.samples == 0) return nullptr;
  return {{"min", m.min}, {"mean", m.mean}, {"max", m.max}, {"samples", m.samples}};
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json detector_json(const DetectorReport& rep) {
  json lines = json::array();
  for (const LineScore& l : rep.lines) {
    lines.push_back({{"role", to_string(l.role)},
                     {"expected_label", l.expected_label},
                     {"points", l.points},
                     {"matched", l.matched},
                     {"preview_m", l.preview}});
  }
  return {{"failed", rep.failed},
          {"error", rep.error},
          {"purity", rep.purity},
          {"points_total", rep.points_total},
          {"points_matched", rep.points_matched},
          {"preview_m", rep.preview},
          {"preview_left_m", rep.preview_left},
          {"preview_right_m", rep.preview_right},
          {"trajectory_max_abs_error_m", optional_number(rep.trajectory_max_error)},
          {"trajectory_mean_abs_error_m", optional_number(rep.trajectory_mean_error)},
          {"seed_failures", rep.seed_failures},
          {"lines_detected", rep.lines_detected},
          {"cross_assignment", rep.cross_assignment},
          {"lines", lines},
          {"warnings", rep.warnings}};
}

json summary_json(const DetectorSummary& s) {
  return {{"purity", metric(s.purity)},
          {"preview_m", metric(s.preview)},
          {"trajectory_max_abs_error_m", metric(s.trajectory_max_error)},
          {"trajectory_mean_abs_error_m", metric(s.trajectory_mean_error)},
          {"frames_failed", s.frames_failed},
          {"seed_failures", s.seed_failures}};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace

std::string points_csv(const ScenarioResult& result) {
  std::ostringstream out;
  out << "frame,side,line_id,truth_label,marking_type,point_index,x,y,z\n";
  for (const FrameResult& fr : result.frames) {
    std::ostringstream block;
    write_cloud_csv(block, fr.cloud, false);
    prefix_rows(out, block.str(), std::to_string(fr.report.index) + ",");
  }
  return out.str();
}

std::string traced_csv(const ScenarioResult& result) {
  std::ostringstream out;
  out << "frame,detector,side,line_id,truth_label,marking_type,point_index,x,y,z,role\n";
  for (const FrameResult& fr : result.frames) {
    const std::string frame = std::to_string(fr.report.index) + ",";
    if (fr.report.baseline.enabled) {
      std::ostringstream block;
      if (fr.baseline.left) write_traced_csv(block, as_traced(*fr.baseline.left, LineRole::EgoLeft), fr.cloud, false);
      if (fr.baseline.right) write_traced_csv(block, as_traced(*fr.baseline.right, LineRole::EgoRight), fr.cloud, false);
      prefix_rows(out, block.str(), frame + "baseline,");
    }
    if (fr.lanes) {
      std::ostringstream block;
      for (const TracedLine* line : fr.lanes->lines()) write_traced_csv(block, *line, fr.cloud, false);
      prefix_rows(out, block.str(), frame + "aldm,");
    }
  }
  return out.str();
}

std::string trajectory_csv(const ScenarioResult& result) {
  std::ostringstream out;
  out << "frame,detector,x,y_left_fit,y_right_fit,y_center\n";
  for (const FrameResult& fr : result.frames) {
    const std::string frame = std::to_string(fr.report.index) + ",";
    for (const auto& [name, traj] : {std::pair{"baseline", &fr.baseline_trajectory},
                                      std::pair{"aldm", &fr.aldm_trajectory}}) {
      if (!*traj) continue;
      std::ostringstream block;
      write_trajectory_csv(block, **traj, false);
      prefix_rows(out, block.str(), frame + name + ",");
    }
  }
  return out.str();
}

std::string report_json(const ScenarioResult& result) {
  json frames = json::array();
  for (const FrameResult& fr : result.frames) {
    const FrameReport& r = fr.report;
    json frame = {{"index", r.index},
                  {"timestamp", r.timestamp},
                  {"ego", {{"station", r.ego.station},
                           {"lateral_offset", r.ego.lateral_offset},
                           {"heading_offset", r.ego.heading_offset},
                           {"lane", r.ego_lane}}},
                  {"expected_labels", {{"ego_left", expected_label(LineRole::EgoLeft, r.ego_lane)},
                                       {"ego_right", expected_label(LineRole::EgoRight, r.ego_lane)},
                                       {"adjacent_left", expected_label(LineRole::AdjacentLeft, r.ego_lane)},
                                       {"adjacent_right", expected_label(LineRole::AdjacentRight, r.ego_lane)}}},
                  {"n_left", fr.cloud.n_left},
                  {"n_right", fr.cloud.n_right},
                  {"point_count", fr.cloud.point_count()},
                  {"error", r.error()}};
    if (r.baseline.enabled) frame["baseline"] = detector_json(r.baseline);
    if (r.aldm.enabled) frame["aldm"] = detector_json(r.aldm);
    frames.push_back(std::move(frame));
  }
  json summary = {{"frames", result.frames.size()}, {"frame_errors", result.frame_errors}};
  if (result.scenario.run_baseline) summary["baseline"] = summary_json(result.baseline);
  if (result.scenario.run_aldm) summary["aldm"] = summary_json(result.aldm);

  const json doc = {{"schema_version", kReportSchemaVersion},
                    {"scenario", result.scenario.name},
                    {"exit_code", result.exit_code()},
                    {"summary", summary},
                    {"frames", frames}};
  return doc.dump(2) + "\n";
}

void write_outputs(const ScenarioResult& result, const std::filesystem::path& dir, bool plots) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
  write_file(dir / "points.csv", points_csv(result));
  write_file(dir / "traced.csv", traced_csv(result));
  write_file(dir / "trajectory.csv", trajectory_csv(result));
  write_file(dir / "report.json", report_json(result));
  if (plots) {
    for (const FrameResult& fr : result.frames) {
      write_file(dir / ("frame_" + std::to_string(fr.report.index) + ".svg"), render_frame_svg(fr));
    }
  }
}

}  // namespace aldm
