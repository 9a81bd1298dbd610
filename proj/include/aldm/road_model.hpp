#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "aldm/geometry.hpp"

namespace aldm {

struct Straight {
  double length{};
};

// Circular arc; positive sweep turns left (CCW), negative turns right.
struct Arc {
  double radius{};
  double sweep{};
};

using Segment = std::variant<Straight, Arc>;

double segment_length(const Segment& segment);

// Marking type codes as reported by the line sensor.
enum class MarkingType : int { Continuous = 1, Dashed = 2, Dotted = 3 };

struct MarkingSpec {
  enum class Kind { None, Continuous, Dashed, Dotted };

  Kind kind = Kind::Continuous;
  double dash_length = 6.0;
  double gap_length = 12.0;
  // Station of the first dash start measured from road start; no dash precedes it.
  double phase = 0.0;

  static MarkingSpec none() { return {Kind::None, 0.0, 0.0, 0.0}; }
  static MarkingSpec continuous() { return {Kind::Continuous, 0.0, 0.0, 0.0}; }
  static MarkingSpec dashed(double dash = 6.0, double gap = 12.0, double phase = 0.0) {
    return {Kind::Dashed, dash, gap, phase};
  }
  static MarkingSpec dotted(double dash = 3.0, double gap = 3.0, double phase = 0.0) {
    return {Kind::Dotted, dash, gap, phase};
  }

  bool is_broken() const { return kind == Kind::Dashed || kind == Kind::Dotted; }
  double period() const { return dash_length + gap_length; }
  // Sensor type code (1/2/3); empty for an unmarked boundary.
  std::optional<int> type_code() const;
  void validate() const;
};

struct RoadSpec {
  std::vector<Segment> segments;
  int lane_count = 1;
  double lane_width = 3.75;
  // One entry per boundary, index 0 is the rightmost boundary.
  std::vector<MarkingSpec> boundary_markings;

  void validate() const;
};

// Ego placement relative to the road reference line.
struct EgoPose {
  double station{};
  double lateral_offset{};  // + = left of the reference line
  double heading_offset{};
};

struct Interval {
  double lo{};
  double hi{};
  double length() const { return hi - lo; }
};

// One painted piece of a boundary marking (one dash, or a whole continuous line).
struct MarkingFragment {
  int boundary{};
  int marking_type{};
  Interval stations;
  std::vector<Vec2> polyline;  // world frame, ends exactly at the station interval ends
};

class RoadGeometry {
 public:
  explicit RoadGeometry(RoadSpec spec);

  const RoadSpec& spec() const { return spec_; }
  double length() const { return length_; }
  int lane_count() const { return spec_.lane_count; }
  int boundary_count() const { return spec_.lane_count + 1; }
  double lane_width() const { return spec_.lane_width; }

  // Reference-line pose at station s (clamped to the road extent).
  Pose2 centerline(double s) const;
  Vec2 point_at(double s, double lateral) const;

  // (k - L/2) * lane_width for boundary k in [0, L].
  double boundary_offset(int boundary) const;
  double lane_center_offset(int lane) const;
  std::optional<int> lane_at(double lateral) const;

  Pose2 ego_pose(const EgoPose& ego) const;

 private:
  struct Piece {
    double s0{};
    Pose2 start;
    Segment segment;
    double length{};
  };

  RoadSpec spec_;
  std::vector<Piece> pieces_;
  double length_{};
};

RoadGeometry build_road(const RoadSpec& spec);

// Place the ego in a lane, offset measured from the lane center.
EgoPose ego_in_lane(const RoadGeometry& road, double station, int lane, double offset_in_lane,
                    double heading_offset = 0.0);

// Dash station intervals of a broken marking clipped to s_range; the whole range for continuous.
std::vector<Interval> marking_intervals(const MarkingSpec& marking, Interval s_range);

std::vector<MarkingFragment> sample_marking(const RoadGeometry& road, int boundary,
                                            const MarkingSpec& marking, Interval s_range,
                                            double vertex_spacing = 0.5);

// Station s >= s_lo at which the curve at `lateral` reaches sensor-frame x == target_x.
// The curve is scanned forward in `scan_step` increments and refined by bisection.
std::optional<double> station_at_sensor_x(const RoadGeometry& road, double lateral,
                                          const Pose2& sensor, double target_x, double s_lo,
                                          double s_hi, double scan_step = 0.5);

struct CenterlineSamples {
  std::vector<PointXY> points;
  bool truncated = false;
};

// Lane center in the sensor frame every 1 m of x from 0 to preview.
CenterlineSamples ground_truth_centerline(const RoadGeometry& road, int lane, const EgoPose& ego,
                                          double preview);

}  // namespace aldm
