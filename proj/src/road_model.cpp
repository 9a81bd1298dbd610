#include "aldm/road_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aldm/errors.hpp"

namespace aldm {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Pose2 advance(const Pose2& start, const Segment& segment, double t) {
  return std::visit(
      Overloaded{
          [&](const Straight&) {
            return Pose2{start.position + t * Vec2{std::cos(start.heading), std::sin(start.heading)},
                         start.heading};
          },
          [&](const Arc& arc) {
            const double kappa = (arc.sweep >= 0.0 ? 1.0 : -1.0) / arc.radius;
            const double h0 = start.heading;
            const double h1 = h0 + kappa * t;
            const Vec2 delta{(std::sin(h1) - std::sin(h0)) / kappa,
                             -(std::cos(h1) - std::cos(h0)) / kappa};
            return Pose2{start.position + delta, h1};
          }},
      segment);
}

}  // namespace

double segment_length(const Segment& segment) {
  return std::visit(Overloaded{[](const Straight& s) { return s.length; },
                               [](const Arc& a) { return a.radius * std::abs(a.sweep); }},
                    segment);
}

std::optional<int> MarkingSpec::type_code() const {
  switch (kind) {
    case Kind::None:
      return std::nullopt;
    case Kind::Continuous:
      return static_cast<int>(MarkingType::Continuous);
    case Kind::Dashed:
      return static_cast<int>(MarkingType::Dashed);
    case Kind::Dotted:
      return static_cast<int>(MarkingType::Dotted);
  }
  return std::nullopt;
}

void MarkingSpec::validate() const {
  if (!is_broken()) return;
  if (!(dash_length > 0.0)) throw InvalidSpec("dash length must be > 0");
  if (!(gap_length >= 0.0)) throw InvalidSpec("gap length must be >= 0");
  if (!(phase >= 0.0 && phase < period())) throw InvalidSpec("dash phase must lie in [0, dash + gap)");
}

void RoadSpec::validate() const {
  if (segments.empty()) throw InvalidSpec("road has no segments");
  for (const auto& segment : segments) {
    std::visit(Overloaded{[](const Straight& s) {
                            if (!(s.length > 0.0)) throw InvalidSpec("straight length must be > 0");
                          },
                          [](const Arc& a) {
                            if (!(a.radius > 0.0)) throw InvalidSpec("arc radius must be > 0");
                            if (!(std::abs(a.sweep) > 0.0)) throw InvalidSpec("arc sweep must be non-zero");
                          }},
               segment);
  }
  if (lane_count < 1) throw InvalidSpec("lane count must be >= 1");
  if (!(lane_width > 0.0)) throw InvalidSpec("lane width must be > 0");
  if (static_cast<int>(boundary_markings.size()) != lane_count + 1) {
    throw InvalidSpec("expected " + std::to_string(lane_count + 1) + " boundary markings, got " +
                      std::to_string(boundary_markings.size()));
  }
  for (const auto& marking : boundary_markings) marking.validate();
}

RoadGeometry::RoadGeometry(RoadSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  Pose2 pose{{0.0, 0.0}, 0.0};
  double s = 0.0;
  for (const auto& segment : spec_.segments) {
    const double len = segment_length(segment);
    pieces_.push_back({s, pose, segment, len});
    pose = advance(pose, segment, len);
    s += len;
  }
  length_ = s;
}

Pose2 RoadGeometry::centerline(double s) const {
  s = std::clamp(s, 0.0, length_);
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), s,
                             [](double v, const Piece& p) { return v < p.s0; });
  const Piece& piece = *std::prev(it);
  return advance(piece.start, piece.segment, std::min(s - piece.s0, piece.length));
}

Vec2 RoadGeometry::point_at(double s, double lateral) const {
  const Pose2 pose = centerline(s);
  return pose.position + lateral * Vec2{-std::sin(pose.heading), std::cos(pose.heading)};
}

double RoadGeometry::boundary_offset(int boundary) const {
  return (boundary - 0.5 * spec_.lane_count) * spec_.lane_width;
}

double RoadGeometry::lane_center_offset(int lane) const {
  return (lane + 0.5 - 0.5 * spec_.lane_count) * spec_.lane_width;
}

std::optional<int> RoadGeometry::lane_at(double lateral) const {
  const int lane = static_cast<int>(std::floor(lateral / spec_.lane_width + 0.5 * spec_.lane_count));
  if (lane < 0 || lane >= spec_.lane_count) return std::nullopt;
  return lane;
}

Pose2 RoadGeometry::ego_pose(const EgoPose& ego) const {
  const Pose2 ref = centerline(ego.station);
  return {point_at(ego.station, ego.lateral_offset), ref.heading + ego.heading_offset};
}

RoadGeometry build_road(const RoadSpec& spec) { return RoadGeometry(spec); }

EgoPose ego_in_lane(const RoadGeometry& road, double station, int lane, double offset_in_lane,
                    double heading_offset) {
  if (lane < 0 || lane >= road.lane_count()) throw InvalidSpec("ego lane out of range");
  if (station < 0.0 || station > road.length()) throw InvalidSpec("ego station outside road extent");
  return {station, road.lane_center_offset(lane) + offset_in_lane, heading_offset};
}

std::vector<Interval> marking_intervals(const MarkingSpec& marking, Interval s_range) {
  std::vector<Interval> out;
  if (!(s_range.hi > s_range.lo)) return out;
  switch (marking.kind) {
    case MarkingSpec::Kind::None:
      return out;
    case MarkingSpec::Kind::Continuous:
      out.push_back(s_range);
      return out;
    case MarkingSpec::Kind::Dashed:
    case MarkingSpec::Kind::Dotted:
      break;
  }
  const double period = marking.period();
  const double first = std::max(0.0, std::floor((s_range.lo - marking.phase) / period) - 1.0);
  for (double k = first;; k += 1.0) {
    const double start = marking.phase + k * period;
    if (start >= s_range.hi) break;
    const double lo = std::max(start, s_range.lo);
    const double hi = std::min(start + marking.dash_length, s_range.hi);
    if (hi > lo) out.push_back({lo, hi});
  }
  return out;
}

std::vector<MarkingFragment> sample_marking(const RoadGeometry& road, int boundary,
                                            const MarkingSpec& marking, Interval s_range,
                                            double vertex_spacing) {
  if (boundary < 0 || boundary >= road.boundary_count()) throw InvalidSpec("boundary index out of range");
  if (s_range.lo < 0.0 || s_range.hi > road.length() + 1e-9) {
    throw InvalidSpec("station range outside road extent");
  }
  std::vector<MarkingFragment> fragments;
  const auto code = marking.type_code();
  if (!code) return fragments;
  const double lateral = road.boundary_offset(boundary);
  for (const Interval& iv : marking_intervals(marking, s_range)) {
    MarkingFragment fragment{boundary, *code, iv, {}};
    const int steps = std::max(1, static_cast<int>(std::ceil(iv.length() / vertex_spacing)));
    fragment.polyline.reserve(steps + 1);
    for (int i = 0; i <= steps; ++i) {
      const double s = (i == steps) ? iv.hi : iv.lo + iv.length() * i / steps;
      fragment.polyline.push_back(road.point_at(s, lateral));
    }
    fragments.push_back(std::move(fragment));
  }
  return fragments;
}

std::optional<double> station_at_sensor_x(const RoadGeometry& road, double lateral,
                                          const Pose2& sensor, double target_x, double s_lo,
                                          double s_hi, double scan_step) {
  s_lo = std::max(s_lo, 0.0);
  s_hi = std::min(s_hi, road.length());
  if (!(s_hi >= s_lo)) return std::nullopt;
  auto excess = [&](double s) { return sensor.to_local(road.point_at(s, lateral)).x - target_x; };

  double a = s_lo;
  double fa = excess(a);
  if (fa > 1e-9) return std::nullopt;
  if (fa >= 0.0) return a;
  while (a < s_hi) {
    const double b = std::min(a + scan_step, s_hi);
    const double fb = excess(b);
    if (fb >= 0.0) {
      double lo = a;
      double hi = b;
      for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) < 0.0 ? lo : hi) = mid;
      }
      return hi;
    }
    a = b;
  }
  return std::nullopt;
}

CenterlineSamples ground_truth_centerline(const RoadGeometry& road, int lane, const EgoPose& ego,
                                          double preview) {
  if (lane < 0 || lane >= road.lane_count()) throw InvalidSpec("lane index out of range");
  const Pose2 sensor = road.ego_pose(ego);
  const double lateral = road.lane_center_offset(lane);
  CenterlineSamples out;
  double s_lo = std::max(0.0, ego.station - road.lane_width() * road.lane_count() - 10.0);
  for (int i = 0; i <= static_cast<int>(std::floor(preview + 1e-9)); ++i) {
    const auto s = station_at_sensor_x(road, lateral, sensor, static_cast<double>(i), s_lo, road.length());
    if (!s) {
      out.truncated = true;
      break;
    }
    const Vec2 local = sensor.to_local(road.point_at(*s, lateral));
    out.points.push_back({local.x, local.y, 0.0});
    s_lo = *s;
  }
  return out;
}

}  // namespace aldm
