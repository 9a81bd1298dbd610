// One PASS/FAIL line per acceptance criterion; exit status is non-zero if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "aldm/aldm_core.hpp"
#include "aldm/baseline_detector.hpp"
#include "aldm/errors.hpp"
#include "aldm/harness.hpp"
#include "aldm/quadratic.hpp"
#include "aldm/scenario.hpp"
#include "aldm/trajectory.hpp"
#include "support.hpp"

namespace {

using namespace aldm;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

RunOptions single_thread() {
  RunOptions o;
  o.threads = 1;
  return o;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

Outcome capacity() {
  SensorConfig cfg;
  cfg.ld_range = 200;
  cfg.dx = 2;
  cfg.max_lines = 100;
  const long cap = cfg.point_capacity();
  return {cap == 10000, "capacity=" + std::to_string(cap)};
}

Outcome baseline_failure() {
  const ScenarioResult result = run_scenario(builtin_scenario("worst_case"), single_thread());
  bool dash_only = true;
  int cross_frames = 0;
  std::size_t max_points = 0;
  double max_preview = 0;
  for (const FrameResult& fr : result.frames) {
    const int lane = fr.report.ego_lane;
    const auto& sel = fr.baseline;
    if (!sel.left) {
      dash_only = false;
      continue;
    }
    max_points = std::max(max_points, sel.left->points.size());
    max_preview = std::max(max_preview, sel.left->preview());
    dash_only &= sel.left->points.size() <= 4 && sel.left->preview() <= 8.0;
    if (sel.right && sel.right->truth_label == expected_label(LineRole::EgoLeft, lane)) ++cross_frames;
  }
  return {dash_only && cross_frames >= 1, "left object <= " + std::to_string(max_points) + " points, preview <= " +
                                              fmt("%.2f", max_preview) + " m, cross-assigned frames " +
                                              std::to_string(cross_frames) + "/" +
                                              std::to_string(result.frames.size())};
}

Outcome aldm_worst_case() {
  const ScenarioResult result = run_scenario(builtin_scenario("worst_case"), single_thread());
  bool ok = !result.frames.empty();
  double min_purity = 1.0;
  double min_preview = 1e9;
  for (const FrameResult& fr : result.frames) {
    const DetectorReport& rep = fr.report.aldm;
    ok &= !rep.failed && rep.purity == 1.0 && rep.preview >= 60.0;
    min_purity = std::min(min_purity, rep.purity);
    min_preview = std::min(min_preview, rep.preview);
  }
  return {ok, fmt("min purity %.4f, min preview %.2f m", min_purity, min_preview)};
}

Outcome multi_lane() {
  const ScenarioResult result = run_scenario(builtin_scenario("straight_3lane"), single_thread());
  bool ok = !result.frames.empty();
  for (const FrameResult& fr : result.frames) {
    ok &= fr.downsampled.size() == 4;
    for (const TracedLine& l : fr.downsampled) ok &= l.points.size() == 13;
  }
  return {ok, std::to_string(result.frames.size()) + " frames checked"};
}

// Independent elimination with partial pivoting in extended precision.
std::array<long double, 3> eliminate(const std::array<PointXY, 3>& pts) {
  long double m[3][4];
  for (int r = 0; r < 3; ++r) {
    const long double x = pts[r].x;
    m[r][0] = x * x;
    m[r][1] = x;
    m[r][2] = 1;
    m[r][3] = pts[r].y;
  }
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
    for (int k = 0; k < 4; ++k) std::swap(m[c][k], m[piv][k]);
    for (int r = c + 1; r < 3; ++r) {
      const long double f = m[r][c] / m[c][c];
      for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::array<long double, 3> sol{};
  for (int r = 2; r >= 0; --r) {
    long double acc = m[r][3];
    for (int k = r + 1; k < 3; ++k) acc -= m[r][k] * sol[k];
    sol[r] = acc / m[r][r];
  }
  return sol;
}

Outcome quadratic_oracle() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> xs(0.0, 210.0), ys(-15.0, 15.0);
  double worst = 0;
  int n = 0;
  while (n < 1000) {
    std::array<PointXY, 3> p;
    for (auto& v : p) v = {xs(rng), ys(rng), 0};
    if (std::abs(p[0].x - p[1].x) < 0.5 || std::abs(p[1].x - p[2].x) < 0.5 || std::abs(p[0].x - p[2].x) < 0.5)
      continue;
    const QuadCoeffs q = fit_quadratic(p[0], p[1], p[2]);
    const auto want = eliminate(p);
    const double got[3] = {q.a, q.b, q.c};
    for (int k = 0; k < 3; ++k) {
      const long double scale = std::max<long double>(1.0L, std::fabs(want[k]));
      worst = std::max(worst, static_cast<double>(std::fabs(got[k] - want[k]) / scale));
    }
    ++n;
  }
  return {worst <= 1e-9, fmt("max relative error %.3e over 1000 triples", worst)};
}

// Bound produced by tests/oracles/trajectory_bound.py before the implementation existed.
constexpr double kArcBound = 0.027;

Outcome trajectory_accuracy() {
  const ScenarioResult result = run_scenario(builtin_scenario("arc_500"), single_thread());
  double worst = 0;
  bool ok = !result.frames.empty();
  for (const FrameResult& fr : result.frames) {
    const auto& e = fr.report.aldm.trajectory_max_error;
    ok &= e.has_value();
    if (e) worst = std::max(worst, *e);
  }
  return {ok && worst <= kArcBound, fmt("max |centerline - truth| %.4f m, bound %.3f m", worst, kArcBound)};
}

std::optional<LaneSet> try_detect(const SensorCloud& cloud, const AldmParams& params) {
  try {
    return detect_lanes(cloud, params);
  } catch (const LaneDetectionFailure&) {
    return std::nullopt;
  }
}

bool same(const std::optional<LaneSet>& a, const std::optional<LaneSet>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  const auto la = a->lines();
  const auto lb = b->lines();
  if (la.size() != lb.size()) return false;
  for (std::size_t i = 0; i < la.size(); ++i) {
    if (la[i]->role != lb[i]->role || la[i]->points != lb[i]->points || la[i]->provenance != lb[i]->provenance)
      return false;
  }
  return true;
}

Outcome side_independence() {
  int identical = 0;
  int detected = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Scenario s = testing::random_scenario(seed);
    const RoadGeometry road(s.road);
    const SensorCloud cloud = sense(road, s.poses(road).front(), s.sensor);
    const auto a = try_detect(cloud, s.aldm);
    const auto b = try_detect(invert_sides(cloud), s.aldm);
    identical += same(a, b);
    detected += a.has_value();
  }
  return {identical == 20, std::to_string(identical) + "/20 identical (" + std::to_string(detected) +
                               " with a detected ego lane)"};
}

SensorCloud full_load_cloud() {
  SensorCloud cloud;
  const SensorConfig cfg;
  for (int line = 0; line < 100; ++line) {
    LineObject obj;
    obj.id = line;
    obj.truth_label = line;
    obj.marking_type = 1;
    const double y = (line - 49.5) * 0.3;
    for (int k = 0; k < cfg.samples_per_line(); ++k) obj.points.push_back({cfg.grid_x(k), y, 0});
    obj.side = side_of(obj.points.front());
    (obj.side == Side::Left ? cloud.left : cloud.right).push_back(std::move(obj));
  }
  cloud.n_left = cloud.left.size();
  cloud.n_right = cloud.right.size();
  return cloud;
}

Outcome performance() {
  const SensorCloud cloud = full_load_cloud();
  const AldmParams params;
  std::vector<double> ms;
  std::size_t lines = 0;
  std::size_t samples = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const auto t0 = Clock::now();
    const LaneSet lanes = detect_lanes(cloud, params);
    std::vector<TracedLine> reduced;
    for (const TracedLine* l : lanes.lines()) reduced.push_back(downsample(*l, params.output_points));
    const Trajectory t = compute_trajectory(reduced[0], reduced[1]);
    ms.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
    lines = reduced.size();
    samples = t.center_samples.size();
  }
  std::sort(ms.begin(), ms.end());
  const double median = ms[ms.size() / 2];
  return {cloud.point_count() == 10000 && lines == 4 && samples == 13 && median <= 10.0,
          fmt("%.0f points, %.3f ms median, %.3f ms worst per frame", static_cast<double>(cloud.point_count()),
              median, ms.back())};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"sensor point capacity", capacity},
      {"baseline fragmentation failure on worst_case", baseline_failure},
      {"aldm purity and preview on worst_case", aldm_worst_case},
      {"multi-lane detection on straight_3lane", multi_lane},
      {"quadratic fit against elimination oracle", quadratic_oracle},
      {"trajectory accuracy on arc_500", trajectory_accuracy},
      {"side-tag independence", side_independence},
      {"runtime at full sensor load", performance},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto t0 = Clock::now();
    Outcome out;
    try {
      out = check();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("%s  %-46s %s [%.3f s]\n", out.pass ? "PASS" : "FAIL", name, out.detail.c_str(), secs);
    failures += !out.pass;
  }
  std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
