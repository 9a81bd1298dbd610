#include "aldm/line_sensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <string>

#include "aldm/errors.hpp"
#include "text_format.hpp"

namespace aldm {

const char* to_string(Side side) { return side == Side::Left ? "left" : "right"; }

void SensorConfig::validate() const {
  if (!(ld_range > 0.0)) throw InvalidSpec("sensor range must be > 0");
  if (!(dx > 0.0)) throw InvalidSpec("sensor sample spacing must be > 0");
  if (!(near_offset >= 0.0)) throw InvalidSpec("sensor near offset must be >= 0");
  if (max_lines < 1) throw InvalidSpec("max_lines must be >= 1");
  if (max_points_per_line < 1) throw InvalidSpec("max_points_per_line must be >= 1");
  if (!(lateral_window > 0.0)) throw InvalidSpec("lateral window must be > 0");
  if (!(noise_sigma >= 0.0)) throw InvalidSpec("noise sigma must be >= 0");
}

int SensorConfig::samples_per_line() const {
  return static_cast<int>(std::floor(ld_range / dx + 1e-9));
}

long SensorConfig::point_capacity() const {
  return static_cast<long>(samples_per_line()) * max_lines;
}

double LineObject::min_abs_y() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : points) best = std::min(best, std::abs(p.y));
  return best;
}

double LineObject::preview() const {
  return points.empty() ? 0.0 : points.back().x - points.front().x;
}

std::size_t SensorCloud::point_count() const {
  std::size_t n = 0;
  for (const auto& l : left) n += l.points.size();
  for (const auto& l : right) n += l.points.size();
  return n;
}

Side side_of(const PointXY& first_point) { return first_point.y < 0.0 ? Side::Right : Side::Left; }

namespace {

struct GridHit {
  double station{};
  PointXY point;
};

struct Candidate {
  LineObject object;
  double first_station{};
};

}  // namespace

SensorCloud sense(const RoadGeometry& road, const EgoPose& ego, const SensorConfig& config,
                  double timestamp) {
  config.validate();
  if (ego.station < 0.0 || ego.station > road.length()) throw InvalidSpec("ego station outside road extent");

  const Pose2 sensor = road.ego_pose(ego);
  const double road_half_width = 0.5 * road.lane_count() * road.lane_width() + std::abs(ego.lateral_offset);
  const double s_lo = std::max(0.0, ego.station - road_half_width - 1.0);
  const double s_hi = std::min(road.length(), ego.station + 1.5 * config.fov_end() + road_half_width + 10.0);
  const int samples = config.samples_per_line();

  std::mt19937_64 rng(config.noise_seed);
  std::normal_distribution<double> jitter(0.0, config.noise_sigma > 0.0 ? config.noise_sigma : 1.0);

  std::vector<Candidate> candidates;
  for (int k = 0; k < road.boundary_count(); ++k) {
    const MarkingSpec& marking = road.spec().boundary_markings[k];
    const auto fragments = sample_marking(road, k, marking, {s_lo, s_hi});
    if (fragments.empty()) continue;
    const double lateral = road.boundary_offset(k);

    std::vector<GridHit> hits;
    double cursor = s_lo;
    for (int i = 0; i < samples; ++i) {
      const double gx = config.grid_x(i);
      const auto s = station_at_sensor_x(road, lateral, sensor, gx, cursor, s_hi);
      if (!s) break;
      cursor = *s;
      const Vec2 local = sensor.to_local(road.point_at(*s, lateral));
      if (std::abs(local.y) > config.lateral_window) continue;
      hits.push_back({*s, {gx, local.y, 0.0}});
    }

    std::vector<Candidate> per_boundary;
    std::size_t f = 0;
    int last_fragment = -1;
    for (const GridHit& hit : hits) {
      while (f < fragments.size() && fragments[f].stations.hi < hit.station) ++f;
      if (f == fragments.size()) break;
      if (hit.station < fragments[f].stations.lo) continue;
      const int group = config.merge_markings ? 0 : static_cast<int>(f);
      if (group != last_fragment) {
        Candidate c;
        c.object.truth_label = k;
        c.object.marking_type = fragments[f].marking_type;
        c.first_station = hit.station;
        per_boundary.push_back(std::move(c));
        last_fragment = group;
      }
      auto& points = per_boundary.back().object.points;
      if (static_cast<int>(points.size()) < config.max_points_per_line) points.push_back(hit.point);
    }
    for (auto& c : per_boundary) candidates.push_back(std::move(c));
  }

  for (auto& c : candidates) {
    if (config.noise_sigma > 0.0) {
      for (auto& p : c.object.points) p.y += jitter(rng);
    }
    c.object.side = side_of(c.object.points.front());
  }

  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    const double ax = a.object.points.front().x;
    const double bx = b.object.points.front().x;
    if (ax != bx) return ax < bx;
    return a.object.truth_label < b.object.truth_label;
  });
  if (static_cast<int>(candidates.size()) > config.max_lines) candidates.resize(config.max_lines);

  SensorCloud cloud;
  cloud.timestamp = timestamp;
  cloud.config = config;
  int next_id = 0;
  for (auto& c : candidates) {
    c.object.id = next_id++;
    (c.object.side == Side::Left ? cloud.left : cloud.right).push_back(std::move(c.object));
  }
  cloud.n_left = cloud.left.size();
  cloud.n_right = cloud.right.size();
  return cloud;
}

SensorCloud invert_sides(const SensorCloud& cloud) {
  SensorCloud out = cloud;
  std::swap(out.left, out.right);
  for (auto& l : out.left) l.side = Side::Left;
  for (auto& l : out.right) l.side = Side::Right;
  out.n_left = out.left.size();
  out.n_right = out.right.size();
  return out;
}

void write_cloud_csv(std::ostream& out, const SensorCloud& cloud, bool header) {
  using detail::fixed;
  if (header) out << "side,line_id,truth_label,marking_type,point_index,x,y,z\n";
  for (const auto* list : {&cloud.left, &cloud.right}) {
    for (const LineObject& line : *list) {
      for (std::size_t i = 0; i < line.points.size(); ++i) {
        const PointXY& p = line.points[i];
        out << to_string(line.side) << ',' << line.id << ',' << line.truth_label << ','
            << line.marking_type << ',' << i << ',' << fixed(p.x) << ',' << fixed(p.y) << ','
            << fixed(p.z) << '\n';
      }
    }
  }
}

}  // namespace aldm
