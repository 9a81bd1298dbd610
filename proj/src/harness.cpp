#include "aldm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "aldm/errors.hpp"

namespace aldm {

void MetricSummary::add(double v) {
  if (samples == 0) {
    min = max = v;
  } else {
    min = std::min(min, v);
    max = std::max(max, v);
  }
  sum_ += v;
  ++samples;
}

void MetricSummary::finish() { mean = samples ? sum_ / static_cast<double>(samples) : 0.0; }

bool FrameReport::error() const {
  return (baseline.enabled && baseline.failed) || (aldm.enabled && aldm.failed);
}

int expected_label(LineRole role, int ego_lane) {
  switch (role) {
    case LineRole::EgoRight:
      return ego_lane;
    case LineRole::EgoLeft:
      return ego_lane + 1;
    case LineRole::AdjacentRight:
      return ego_lane - 1;
    case LineRole::AdjacentLeft:
      return ego_lane + 2;
  }
  return -1;
}

namespace {

void score_trajectory(const Trajectory& t, const std::vector<PointXY>& truth, DetectorReport& rep) {
  double worst = 0.0;
  double sum = 0.0;
  std::size_t n = 0;
  for (const PointXY& g : truth) {
    if (g.x < t.x_begin || g.x > t.x_end) continue;
    const double e = std::abs(t.center(g.x) - g.y);
    worst = std::max(worst, e);
    sum += e;
    ++n;
  }
  if (n == 0) {
    rep.warnings.push_back("no ground-truth stations inside the trajectory range");
    return;
  }
  rep.trajectory_max_error = worst;
  rep.trajectory_mean_error = sum / static_cast<double>(n);
}

void finish_purity(DetectorReport& rep) {
  rep.points_total = 0;
  rep.points_matched = 0;
  for (const auto& l : rep.lines) {
    rep.points_total += l.points;
    rep.points_matched += l.matched;
  }
  rep.purity = rep.points_total ? static_cast<double>(rep.points_matched) / static_cast<double>(rep.points_total)
                                : 1.0;
  rep.lines_detected = static_cast<int>(rep.lines.size());
}

void run_baseline(FrameResult& fr) {
  DetectorReport& rep = fr.report.baseline;
  rep.enabled = true;
  const int lane = fr.report.ego_lane;
  fr.baseline = detect_baseline(fr.cloud);
  const auto& sel = fr.baseline;

  auto score = [&](const std::optional<LineObject>& obj, LineRole role, double& preview) {
    if (!obj) {
      ++rep.seed_failures;
      rep.failed = true;
      if (!rep.error.empty()) rep.error += "; ";
      rep.error += std::string("no ") + (role == LineRole::EgoLeft ? "left" : "right") + " line object";
      return;
    }
    const int expected = expected_label(role, lane);
    rep.lines.push_back({role, expected, obj->points.size(),
                         obj->truth_label == expected ? obj->points.size() : 0, obj->preview()});
    preview = obj->preview();
  };
  score(sel.left, LineRole::EgoLeft, rep.preview_left);
  score(sel.right, LineRole::EgoRight, rep.preview_right);
  rep.preview = std::min(rep.preview_left, rep.preview_right);
  rep.cross_assignment = (sel.left && sel.left->truth_label == expected_label(LineRole::EgoRight, lane)) ||
                         (sel.right && sel.right->truth_label == expected_label(LineRole::EgoLeft, lane));
  finish_purity(rep);

  if (sel.left && sel.right) {
    try {
      fr.baseline_trajectory = compute_trajectory(sel.left->points, sel.right->points, 13);
      score_trajectory(*fr.baseline_trajectory, fr.ground_truth, rep);
    } catch (const Error& e) {
      rep.warnings.push_back(std::string("baseline trajectory unavailable: ") + e.what());
    }
  }
}

void run_aldm(FrameResult& fr, const AldmParams& params) {
  DetectorReport& rep = fr.report.aldm;
  rep.enabled = true;
  const int lane = fr.report.ego_lane;
  try {
    fr.lanes = detect_lanes(fr.cloud, params);
  } catch (const LaneDetectionFailure& e) {
    rep.failed = true;
    rep.error = e.what();
    rep.seed_failures = static_cast<int>(e.left_failed()) + static_cast<int>(e.right_failed());
    return;
  }

  for (const TracedLine* line : fr.lanes->lines()) {
    const int expected = expected_label(line->role, lane);
    const auto matched = static_cast<std::size_t>(std::count_if(
        line->provenance.begin(), line->provenance.end(), [&](const Provenance& p) { return p.truth_label == expected; }));
    rep.lines.push_back({line->role, expected, line->points.size(), matched, line->preview()});
    rep.warnings.insert(rep.warnings.end(), line->warnings.begin(), line->warnings.end());
    fr.downsampled.push_back(downsample(*line, params.output_points));
  }
  rep.preview_left = fr.lanes->ego_left.preview();
  rep.preview_right = fr.lanes->ego_right.preview();
  rep.preview = std::min(rep.preview_left, rep.preview_right);
  const auto has_label = [](const TracedLine& l, int label) {
    return std::any_of(l.provenance.begin(), l.provenance.end(),
                       [&](const Provenance& p) { return p.truth_label == label; });
  };
  rep.cross_assignment = has_label(fr.lanes->ego_left, expected_label(LineRole::EgoRight, lane)) ||
                         has_label(fr.lanes->ego_right, expected_label(LineRole::EgoLeft, lane));
  finish_purity(rep);

  try {
    fr.aldm_trajectory = compute_trajectory(fr.downsampled[0], fr.downsampled[1], 13);
    score_trajectory(*fr.aldm_trajectory, fr.ground_truth, rep);
  } catch (const Error& e) {
    rep.failed = true;
    rep.error = std::string("trajectory: ") + e.what();
  }
}

}  // namespace

FrameResult run_frame(const Scenario& scenario, const RoadGeometry& road, const EgoPose& ego, int index) {
  const auto t0 = std::chrono::steady_clock::now();
  FrameResult fr;
  fr.report.index = index;
  fr.report.timestamp = index * scenario.frame_dt;
  fr.report.ego = ego;
  const auto lane = road.lane_at(ego.lateral_offset);
  if (!lane) throw InvalidSpec("ego pose is not inside any lane");
  fr.report.ego_lane = *lane;

  SensorConfig config = scenario.sensor;
  config.noise_seed = scenario.sensor.noise_seed + static_cast<std::uint64_t>(index);
  fr.cloud = sense(road, ego, config, fr.report.timestamp);
  fr.ground_truth = ground_truth_centerline(road, *lane, ego, config.ld_range).points;

  if (scenario.run_baseline) run_baseline(fr);
  if (scenario.run_aldm) run_aldm(fr, scenario.aldm);
  fr.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return fr;
}

ScenarioResult run_scenario(const Scenario& scenario, const RunOptions& options) {
  scenario.validate();
  const RoadGeometry road(scenario.road);
  const auto poses = scenario.poses(road);

  int first = 0;
  int last = static_cast<int>(poses.size()) - 1;
  if (options.frames) {
    first = std::max(first, options.frames->first);
    last = std::min(last, options.frames->second);
    if (first > last) throw ConfigError("frame range selects no frames");
  }

  ScenarioResult result;
  result.scenario = scenario;
  result.frames.resize(static_cast<std::size_t>(last - first + 1));

  unsigned workers = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(result.frames.size()));
  std::atomic<int> next{first};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (int i = next++; i <= last; i = next++) {
      try {
        result.frames[static_cast<std::size_t>(i - first)] = run_frame(scenario, road, poses[static_cast<std::size_t>(i)], i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (const FrameResult& fr : result.frames) {
    const auto accumulate = [](const DetectorReport& rep, DetectorSummary& sum) {
      if (!rep.enabled) return;
      sum.seed_failures += rep.seed_failures;
      if (rep.failed) ++sum.frames_failed;
      sum.purity.add(rep.purity);
      sum.preview.add(rep.preview);
      if (rep.trajectory_max_error) sum.trajectory_max_error.add(*rep.trajectory_max_error);
      if (rep.trajectory_mean_error) sum.trajectory_mean_error.add(*rep.trajectory_mean_error);
    };
    accumulate(fr.report.baseline, result.baseline);
    accumulate(fr.report.aldm, result.aldm);
    if (fr.report.error()) ++result.frame_errors;
  }
  for (DetectorSummary* s : {&result.baseline, &result.aldm}) {
    s->purity.finish();
    s->preview.finish();
    s->trajectory_max_error.finish();
    s->trajectory_mean_error.finish();
  }
  return result;
}

}  // namespace aldm
