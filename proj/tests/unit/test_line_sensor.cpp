#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include "aldm/errors.hpp"
#include "aldm/line_sensor.hpp"
#include "aldm/road_model.hpp"
#include "support.hpp"

namespace aldm {
namespace {

using testing::straight_spec;

std::vector<const LineObject*> all_objects(const SensorCloud& cloud) {
  std::vector<const LineObject*> out;
  for (const auto& l : cloud.left) out.push_back(&l);
  for (const auto& l : cloud.right) out.push_back(&l);
  return out;
}

std::multiset<std::tuple<int, double, double>> point_set(const SensorCloud& cloud) {
  std::multiset<std::tuple<int, double, double>> out;
  for (const LineObject* l : all_objects(cloud))
    for (const PointXY& p : l->points) out.insert({l->truth_label, p.x, p.y});
  return out;
}

TEST(SensorConfig, CapacityIsTenThousand) {
  SensorConfig cfg;
  cfg.ld_range = 200;
  cfg.dx = 2;
  cfg.max_lines = 100;
  EXPECT_EQ(cfg.samples_per_line(), 100);
  EXPECT_EQ(cfg.point_capacity(), 10000);
}

TEST(SensorConfig, Validation) {
  SensorConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  for (auto mutate : std::vector<void (*)(SensorConfig&)>{
           [](SensorConfig& c) { c.ld_range = 0; }, [](SensorConfig& c) { c.dx = -1; },
           [](SensorConfig& c) { c.near_offset = -0.1; }, [](SensorConfig& c) { c.max_lines = 0; },
           [](SensorConfig& c) { c.max_points_per_line = 0; }, [](SensorConfig& c) { c.lateral_window = 0; },
           [](SensorConfig& c) { c.noise_sigma = -1; }}) {
    SensorConfig bad;
    mutate(bad);
    EXPECT_THROW(bad.validate(), InvalidSpec);
  }
}

TEST(SideOf, SignOfFirstPoint) {
  EXPECT_EQ(side_of({5.52, -1.8, 0}), Side::Right);
  EXPECT_EQ(side_of({5.52, 1.9, 0}), Side::Left);
  EXPECT_EQ(side_of({5.52, 0.0, 0}), Side::Left);
}

TEST(Sense, ContinuousBoundariesGiveOneFullObjectPerSide) {
  const RoadGeometry road = build_road(straight_spec(400, 1, {MarkingSpec::continuous(), MarkingSpec::continuous()}));
  const SensorCloud cloud = sense(road, ego_in_lane(road, 0, 0, 0.0), SensorConfig{});
  ASSERT_EQ(cloud.n_left, 1u);
  ASSERT_EQ(cloud.n_right, 1u);
  EXPECT_EQ(cloud.left.size(), cloud.n_left);
  EXPECT_EQ(cloud.right.size(), cloud.n_right);
  EXPECT_EQ(cloud.left[0].points.size(), 100u);
  EXPECT_EQ(cloud.right[0].points.size(), 100u);
  EXPECT_EQ(cloud.left[0].truth_label, 1);
  EXPECT_EQ(cloud.right[0].truth_label, 0);
  EXPECT_EQ(cloud.left[0].marking_type, 1);
  for (int k = 0; k < 100; ++k) {
    EXPECT_NEAR(cloud.left[0].points[k].x, 5.52 + 2.0 * k, 1e-9);
    EXPECT_NEAR(cloud.left[0].points[k].y, 1.875, 1e-9);
    EXPECT_NEAR(cloud.right[0].points[k].y, -1.875, 1e-9);
  }
}

TEST(Sense, DashedBoundaryMatchesTilingOracle) {
  const RoadGeometry road =
      build_road(straight_spec(400, 1, {MarkingSpec::continuous(), MarkingSpec::dashed(6, 12, 0)}));
  const SensorConfig cfg;
  const SensorCloud cloud = sense(road, ego_in_lane(road, 0, 0, 0.0), cfg);

  // Runs of painted grid samples along the left boundary; ego at station 0 makes x == station.
  std::vector<int> runs;
  bool inside = false;
  for (int k = 0; k < cfg.samples_per_line(); ++k) {
    const double s = cfg.grid_x(k);
    const bool paint = std::fmod(s, 18.0) <= 6.0;
    if (paint && !inside) runs.push_back(0);
    if (paint) ++runs.back();
    inside = paint;
  }
  ASSERT_EQ(cloud.left.size(), runs.size());
  EXPECT_GE(runs.size(), 11u);
  EXPECT_LE(runs.size(), 12u);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    EXPECT_EQ(cloud.left[i].points.size(), static_cast<std::size_t>(runs[i])) << i;
    EXPECT_EQ(cloud.left[i].marking_type, 2);
    // only the dashes clipped by either end of the field of view may be shorter
    if (i > 0 && i + 1 < runs.size()) {
      EXPECT_GE(runs[i], 3);
      EXPECT_LE(runs[i], 4);
    }
  }
}

TEST(Sense, FieldOfViewAndGridInvariants) {
  for (const char* label : {"straight", "curve"}) {
    RoadSpec spec;
    if (std::string(label) == "straight") spec.segments = {Straight{500}};
    else spec.segments = {Straight{30}, Arc{500, -0.8}};
    spec.lane_count = 3;
    spec.boundary_markings = {MarkingSpec::continuous(), MarkingSpec::dashed(6, 12, 3), MarkingSpec::dashed(6, 12, 11),
                              MarkingSpec::continuous()};
    const RoadGeometry road(spec);
    SensorConfig cfg;
    const SensorCloud cloud = sense(road, ego_in_lane(road, 12, 1, 0.4), cfg);
    std::set<std::pair<double, double>> seen;
    for (const LineObject* l : all_objects(cloud)) {
      ASSERT_FALSE(l->points.empty());
      EXPECT_LE(l->points.size(), static_cast<std::size_t>(cfg.max_points_per_line));
      EXPECT_EQ(l->side, side_of(l->points.front()));
      for (std::size_t i = 0; i < l->points.size(); ++i) {
        const PointXY& p = l->points[i];
        EXPECT_GE(p.x, cfg.fov_begin() - 1e-9) << label;
        EXPECT_LE(p.x, cfg.fov_end() + 1e-9) << label;
        EXPECT_LE(std::abs(p.y), cfg.lateral_window);
        const double k = (p.x - cfg.near_offset) / cfg.dx;
        EXPECT_NEAR(k, std::round(k), 1e-9);
        if (i) EXPECT_NEAR(p.x - l->points[i - 1].x, cfg.dx, 1e-9);
        EXPECT_TRUE(seen.insert({l->truth_label, p.x}).second) << "duplicate point";
      }
    }
    EXPECT_LE(cloud.n_left + cloud.n_right, static_cast<std::size_t>(cfg.max_lines));
  }
}

TEST(Sense, FragmentEndsWithinOneSampleOfMarking) {
  const RoadGeometry road =
      build_road(straight_spec(400, 1, {MarkingSpec::dashed(5, 7, 2), MarkingSpec::dashed(6, 12, 9)}));
  const SensorConfig cfg;
  const double station = 31.0;
  const SensorCloud cloud = sense(road, ego_in_lane(road, station, 0, 0.0), cfg);
  for (int boundary = 0; boundary <= 1; ++boundary) {
    const MarkingSpec& m = road.spec().boundary_markings[boundary];
    const Interval view{station + cfg.fov_begin(), station + cfg.fov_end() - cfg.dx};
    const auto frags = sample_marking(road, boundary, m, view);
    std::vector<const LineObject*> objects;
    for (const LineObject* l : all_objects(cloud))
      if (l->truth_label == boundary) objects.push_back(l);
    std::sort(objects.begin(), objects.end(),
              [](auto* a, auto* b) { return a->points.front().x < b->points.front().x; });
    ASSERT_EQ(objects.size(), frags.size()) << boundary;
    for (std::size_t i = 0; i < frags.size(); ++i) {
      EXPECT_LE(std::abs(objects[i]->points.front().x - (frags[i].stations.lo - station)), cfg.dx);
      EXPECT_LE(std::abs(objects[i]->points.back().x - (frags[i].stations.hi - station)), cfg.dx);
    }
  }
}

TEST(Sense, CurvedFragmentKeepsSideOfItsStart) {
  RoadSpec spec;
  spec.segments = {Arc{500, -1.0}};
  spec.lane_count = 1;
  spec.boundary_markings = {MarkingSpec::continuous(), MarkingSpec::continuous()};
  const RoadGeometry road(spec);
  SensorConfig cfg;
  cfg.lateral_window = 45;
  const SensorCloud cloud = sense(road, ego_in_lane(road, 0, 0, 0.0), cfg);
  ASSERT_EQ(cloud.n_left, 1u);
  const LineObject& left = cloud.left[0];
  EXPECT_GT(left.points.front().y, 0.0);
  EXPECT_LT(left.points.back().y, 0.0);
  EXPECT_EQ(left.side, Side::Left);
}

TEST(Sense, MergeModeIsGeometricallyIdentical) {
  RoadSpec spec;
  spec.segments = {Straight{40}, Arc{500, -0.6}};
  spec.lane_count = 2;
  spec.boundary_markings = {MarkingSpec::continuous(), MarkingSpec::dashed(6, 12, 5.4), MarkingSpec::dotted()};
  const RoadGeometry road(spec);
  SensorConfig frag;
  SensorConfig merged;
  merged.merge_markings = true;
  const EgoPose ego = ego_in_lane(road, 15, 0, -0.3);
  const SensorCloud a = sense(road, ego, frag);
  const SensorCloud b = sense(road, ego, merged);
  EXPECT_GT(a.n_left + a.n_right, b.n_left + b.n_right);
  EXPECT_EQ(b.n_left + b.n_right, 3u);
  EXPECT_EQ(point_set(a), point_set(b));
}

TEST(Sense, MaxLinesDropsFarthestFirst) {
  const RoadGeometry road =
      build_road(straight_spec(400, 1, {MarkingSpec::continuous(), MarkingSpec::dashed(6, 12, 0)}));
  SensorConfig cfg;
  const SensorCloud full = sense(road, ego_in_lane(road, 0, 0, 0.0), cfg);
  cfg.max_lines = 4;
  const SensorCloud capped = sense(road, ego_in_lane(road, 0, 0, 0.0), cfg);
  ASSERT_EQ(capped.n_left + capped.n_right, 4u);
  double kept_max = 0;
  for (const LineObject* l : all_objects(capped)) kept_max = std::max(kept_max, l->points.front().x);
  std::size_t nearer = 0;
  for (const LineObject* l : all_objects(full)) nearer += l->points.front().x <= kept_max;
  EXPECT_EQ(nearer, 4u);
}

TEST(Sense, EmptyRoadGivesEmptyCloud) {
  const RoadGeometry road = build_road(straight_spec(400, 1, {MarkingSpec::none(), MarkingSpec::none()}));
  const SensorCloud cloud = sense(road, ego_in_lane(road, 0, 0, 0.0), SensorConfig{});
  EXPECT_EQ(cloud.point_count(), 0u);
  EXPECT_EQ(cloud.n_left + cloud.n_right, 0u);
}

TEST(Sense, NoiseIsSeededAndLateralOnly) {
  const RoadGeometry road = build_road(straight_spec(400, 1, {MarkingSpec::continuous(), MarkingSpec::continuous()}));
  SensorConfig cfg;
  cfg.noise_sigma = 0.05;
  cfg.noise_seed = 42;
  const EgoPose ego = ego_in_lane(road, 0, 0, 0.0);
  const SensorCloud a = sense(road, ego, cfg);
  const SensorCloud b = sense(road, ego, cfg);
  ASSERT_EQ(a.left[0].points, b.left[0].points);
  cfg.noise_seed = 43;
  const SensorCloud c = sense(road, ego, cfg);
  EXPECT_NE(a.left[0].points, c.left[0].points);
  bool moved = false;
  for (std::size_t i = 0; i < a.left[0].points.size(); ++i) {
    EXPECT_NEAR(a.left[0].points[i].x, 5.52 + 2.0 * static_cast<double>(i), 1e-9);
    moved |= std::abs(a.left[0].points[i].y - 1.875) > 1e-6;
  }
  EXPECT_TRUE(moved);
}

TEST(InvertSides, SwapsListsAndTags) {
  const RoadGeometry road =
      build_road(straight_spec(400, 1, {MarkingSpec::continuous(), MarkingSpec::dashed(6, 12, 0)}));
  const SensorCloud cloud = sense(road, ego_in_lane(road, 0, 0, 0.0), SensorConfig{});
  const SensorCloud inv = invert_sides(cloud);
  EXPECT_EQ(inv.n_left, cloud.n_right);
  EXPECT_EQ(inv.n_right, cloud.n_left);
  for (const auto& l : inv.left) EXPECT_EQ(l.side, Side::Left);
  for (const auto& l : inv.right) EXPECT_EQ(l.side, Side::Right);
  EXPECT_EQ(point_set(inv), point_set(cloud));
}

TEST(CloudCsv, HeaderAndRowCount) {
  const RoadGeometry road = build_road(straight_spec(400, 1, {MarkingSpec::continuous(), MarkingSpec::continuous()}));
  const SensorCloud cloud = sense(road, ego_in_lane(road, 0, 0, 0.0), SensorConfig{});
  std::ostringstream out;
  write_cloud_csv(out, cloud);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "side,line_id,truth_label,marking_type,point_index,x,y,z");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("left,", 0), 0u);
  std::size_t rows = 1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 200u);
}

}  // namespace
}  // namespace aldm
