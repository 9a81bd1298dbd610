#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "aldm/geometry.hpp"
#include "aldm/road_model.hpp"

namespace aldm {

enum class Side { Left, Right };

const char* to_string(Side side);

struct SensorConfig {
  double ld_range = 200.0;
  double dx = 2.0;
  double near_offset = 5.52;
  int max_lines = 100;
  int max_points_per_line = 200;
  // Angular field of view is not modelled; points with |y| beyond this are not sensed.
  double lateral_window = 15.0;
  // One object per boundary instead of one object per painted fragment.
  bool merge_markings = false;
  double noise_sigma = 0.0;
  std::uint64_t noise_seed = 0;

  void validate() const;

  // Longitudinal samples per line: floor(ld_range / dx).
  int samples_per_line() const;
  // Total number of theoretically detectable points, samples_per_line * max_lines.
  long point_capacity() const;
  double fov_begin() const { return near_offset; }
  double fov_end() const { return near_offset + ld_range; }
  // Sensor-frame x of grid sample k.
  double grid_x(int k) const { return near_offset + k * dx; }
};

struct LineObject {
  int id{};
  int truth_label{};  // source boundary; ground truth for scoring only
  int marking_type{};
  Side side = Side::Left;
  std::vector<PointXY> points;  // ascending x

  double min_abs_y() const;
  double preview() const;  // longitudinal extent of the object
};

struct SensorCloud {
  double timestamp{};
  SensorConfig config;
  std::vector<LineObject> left;
  std::vector<LineObject> right;
  std::size_t n_left{};
  std::size_t n_right{};

  std::size_t point_count() const;
};

// Left when y >= 0 (ties go left), evaluated on the first point of a fragment only.
Side side_of(const PointXY& first_point);

SensorCloud sense(const RoadGeometry& road, const EgoPose& ego, const SensorConfig& config,
                  double timestamp = 0.0);

// Moves every object to the opposite side list; used to probe side-tag independence.
SensorCloud invert_sides(const SensorCloud& cloud);

// Rows: side,line_id,truth_label,marking_type,point_index,x,y,z
void write_cloud_csv(std::ostream& out, const SensorCloud& cloud, bool header = true);

}  // namespace aldm
