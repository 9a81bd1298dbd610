#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aldm/aldm_core.hpp"
#include "aldm/baseline_detector.hpp"
#include "aldm/line_sensor.hpp"
#include "aldm/road_model.hpp"
#include "aldm/scenario.hpp"
#include "aldm/trajectory.hpp"

namespace aldm {

inline constexpr int kReportSchemaVersion = 1;

struct LineScore {
  LineRole role = LineRole::EgoLeft;
  int expected_label{};
  std::size_t points{};
  std::size_t matched{};
  double preview{};
};

struct DetectorReport {
  bool enabled = false;
  bool failed = false;  // ego lane not detected
  std::string error;
  std::size_t points_total{};
  std::size_t points_matched{};
  // matched / total over every reported line; 1 when nothing was reported
  double purity = 1.0;
  double preview_left{};
  double preview_right{};
  double preview{};  // min of the two ego guiding lines
  std::optional<double> trajectory_max_error;
  std::optional<double> trajectory_mean_error;
  int seed_failures{};
  int lines_detected{};
  // A guiding line whose source boundary is the opposite ego boundary.
  bool cross_assignment = false;
  std::vector<LineScore> lines;
  std::vector<std::string> warnings;
};

struct FrameReport {
  int index{};
  double timestamp{};
  EgoPose ego;
  int ego_lane{};
  DetectorReport baseline;
  DetectorReport aldm;

  bool error() const;
};

struct FrameResult {
  FrameReport report;
  SensorCloud cloud;
  BaselineSelection baseline;
  std::optional<LaneSet> lanes;
  std::vector<TracedLine> downsampled;  // one per detected ALDM line
  std::optional<Trajectory> aldm_trajectory;
  std::optional<Trajectory> baseline_trajectory;
  std::vector<PointXY> ground_truth;
  double runtime_ms{};
};

struct MetricSummary {
  std::size_t samples{};
  double min{};
  double mean{};
  double max{};

  void add(double v);
  void finish();

 private:
  double sum_{};
};

struct DetectorSummary {
  MetricSummary purity;
  MetricSummary preview;
  MetricSummary trajectory_max_error;
  MetricSummary trajectory_mean_error;
  int frames_failed{};
  int seed_failures{};
};

struct ScenarioResult {
  Scenario scenario;
  std::vector<FrameResult> frames;
  DetectorSummary baseline;
  DetectorSummary aldm;
  int frame_errors{};

  int exit_code() const { return frame_errors == 0 ? 0 : 1; }
};

struct RunOptions {
  // Inclusive frame index range; all frames when empty.
  std::optional<std::pair<int, int>> frames;
  // 0 = one worker per hardware thread.
  unsigned threads = 0;
};

// Ego boundary labels for a lane: {right, left, adjacent right, adjacent left}.
int expected_label(LineRole role, int ego_lane);

FrameResult run_frame(const Scenario& scenario, const RoadGeometry& road, const EgoPose& ego, int index);
ScenarioResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

// points.csv, traced.csv, trajectory.csv, report.json and, with plots, frame_<n>.svg.
void write_outputs(const ScenarioResult& result, const std::filesystem::path& dir, bool plots);
std::string report_json(const ScenarioResult& result);
std::string points_csv(const ScenarioResult& result);
std::string traced_csv(const ScenarioResult& result);
std::string trajectory_csv(const ScenarioResult& result);

// Bird's-eye plot: lateral [-15, 11] m horizontally (right positive), longitudinal [0, 200] m up.
std::string render_frame_svg(const FrameResult& frame);

}  // namespace aldm
