#pragma once

#include <vector>

#include "aldm/line_sensor.hpp"
#include "aldm/road_model.hpp"

namespace aldm::testing {

inline RoadSpec straight_spec(double length, int lanes, std::vector<MarkingSpec> markings) {
  RoadSpec spec;
  spec.segments = {Straight{length}};
  spec.lane_count = lanes;
  spec.boundary_markings = std::move(markings);
  return spec;
}

struct SyntheticLine {
  int truth_label{};
  std::vector<PointXY> points;
};

// A cloud with one object per synthetic line, side-tagged by first point like the sensor does.
inline SensorCloud make_cloud(const std::vector<SyntheticLine>& lines) {
  SensorCloud cloud;
  int id = 0;
  for (const SyntheticLine& l : lines) {
    LineObject obj;
    obj.id = id++;
    obj.truth_label = l.truth_label;
    obj.marking_type = 1;
    obj.side = side_of(l.points.front());
    obj.points = l.points;
    (obj.side == Side::Left ? cloud.left : cloud.right).push_back(std::move(obj));
  }
  cloud.n_left = cloud.left.size();
  cloud.n_right = cloud.right.size();
  return cloud;
}

inline std::vector<PointXY> row(double x0, double dx, int n, double y) {
  std::vector<PointXY> pts;
  for (int i = 0; i < n; ++i) pts.push_back({x0 + i * dx, y, 0.0});
  return pts;
}

}  // namespace aldm::testing

#include <random>

#include "aldm/scenario.hpp"

namespace aldm::testing {

// A random multi-segment road with an in-lane ego pose; all markings sensed without noise.
inline Scenario random_scenario(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Scenario s;
  s.name = "random_" + std::to_string(seed);
  s.road.lane_count = 1 + static_cast<int>(rng() % 3);
  s.road.segments.push_back(Straight{20 + 60 * unit(rng)});
  for (int i = 0; i < 3; ++i) {
    const double radius = 400 + 1600 * unit(rng);
    const double length = 60 + 120 * unit(rng);
    const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
    s.road.segments.push_back(Arc{radius, sign * length / radius});
    s.road.segments.push_back(Straight{10 + 50 * unit(rng)});
  }
  for (int k = 0; k <= s.road.lane_count; ++k) {
    const bool outer = k == 0 || k == s.road.lane_count;
    if (outer) {
      s.road.boundary_markings.push_back(MarkingSpec::continuous());
    } else {
      s.road.boundary_markings.push_back(MarkingSpec::dashed(6, 12, 18 * unit(rng) * 0.999));
    }
  }
  EgoPath path;
  path.start_station = 5 + 20 * unit(rng);
  path.count = 1;
  path.lane = static_cast<int>(rng() % static_cast<std::uint64_t>(s.road.lane_count));
  path.offset_in_lane = (unit(rng) - 0.5) * 1.6;
  s.ego = path;
  return s;
}

}  // namespace aldm::testing
