#include "aldm/baseline_detector.hpp"

#include <vector>

namespace aldm {

namespace {

std::optional<LineObject> nearest_to_axis(const std::vector<LineObject>& lines) {
  const LineObject* best = nullptr;
  double best_y = 0.0;
  for (const LineObject& line : lines) {
    if (line.points.empty()) continue;
    const double d = line.min_abs_y();
    if (!best || d < best_y || (d == best_y && line.points.front().x < best->points.front().x)) {
      best = &line;
      best_y = d;
    }
  }
  if (!best) return std::nullopt;
  return *best;
}

}  // namespace

BaselineSelection detect_baseline(const SensorCloud& cloud) {
  return {nearest_to_axis(cloud.left), nearest_to_axis(cloud.right)};
}

}  // namespace aldm
