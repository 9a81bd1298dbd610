#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aldm/line_sensor.hpp"
#include "aldm/quadratic.hpp"

namespace aldm {

struct AldmParams {
  double max_gap = 18.0;
  double seed_max_x = 23.52;
  double seed_min_separation = 1.8;
  double min_preview = 60.0;
  double adjacent_min_lateral = 2.0;
  int output_points = 13;
  // Candidates further than this from the predicted lateral position are never accepted.
  double max_residual = 1.0;
  // Candidate residuals closer than this are treated as equal and resolved by the tie rules.
  double residual_tie_tolerance = 1e-9;

  void validate() const;
};

// A sensed point pooled without its side tag.
struct PooledPoint {
  PointXY point;
  int line_id{};
  int truth_label{};
  int marking_type{};
  int point_index{};  // index within the source line object
};

using PointPool = std::vector<PooledPoint>;
// One flag per pool entry; consumed points are unavailable to later seeding and tracing.
using ConsumedMask = std::vector<char>;

// All points of all objects, ascending x (ties: y, line id, point index).
PointPool pool_points(const SensorCloud& cloud);

enum class LineRole { EgoLeft, EgoRight, AdjacentLeft, AdjacentRight };

const char* to_string(LineRole role);

struct Provenance {
  int line_id{};
  int truth_label{};
  int marking_type{};
  int point_index{};

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct TracedLine {
  LineRole role = LineRole::EgoLeft;
  std::vector<PointXY> points;  // strictly increasing x
  std::vector<Provenance> provenance;
  std::vector<std::string> warnings;

  double preview() const { return points.empty() ? 0.0 : points.back().x - points.front().x; }
  bool low_preview() const { return !warnings.empty(); }
  // Piecewise-linear lateral position at x, linearly extended past either end.
  double lateral_at(double x) const;
};

struct LaneSet {
  TracedLine ego_left;
  TracedLine ego_right;
  std::optional<TracedLine> adjacent_left;
  std::optional<TracedLine> adjacent_right;

  std::vector<const TracedLine*> lines() const;
};

// Three unconsumed seed points on one side, ascending x. With a non-empty exclusion list the
// seeds must also lie outside every excluded line by at least adjacent_min_lateral.
// Throws SeedFailure when fewer than three points qualify.
std::array<std::size_t, 3> select_seeds(const PointPool& pool, Side side_hint,
                                        std::span<const TracedLine* const> exclusion,
                                        const AldmParams& params,
                                        const ConsumedMask* consumed = nullptr);

// Greedy quadratic-prediction trace starting from three seed indices. Accepted points (seeds
// included) are marked in `consumed`.
TracedLine trace_line(const PointPool& pool, const std::array<std::size_t, 3>& seeds, LineRole role,
                      const AldmParams& params, ConsumedMask& consumed);
TracedLine trace_line(const PointPool& pool, const std::array<std::size_t, 3>& seeds, LineRole role,
                      const AldmParams& params);

// Ego left/right first, then the adjacent outer lines. Throws LaneDetectionFailure when either
// ego guiding line cannot be seeded.
LaneSet detect_lanes(const SensorCloud& cloud, const AldmParams& params = {});

// min(n, len) points at indices round(i (len - 1) / (n - 1)).
TracedLine downsample(const TracedLine& line, int n);

// Rows: side,line_id,truth_label,marking_type,point_index,x,y,z,role
void write_traced_csv(std::ostream& out, const TracedLine& line, const SensorCloud& cloud,
                      bool header = true);

}  // namespace aldm
