#include "aldm/aldm_core.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <unordered_map>

#include "aldm/errors.hpp"
#include "text_format.hpp"

namespace aldm {

void AldmParams::validate() const {
  if (!(max_gap > 0.0)) throw InvalidSpec("max_gap must be > 0");
  if (!(seed_max_x > 0.0)) throw InvalidSpec("seed_max_x must be > 0");
  if (!(seed_min_separation > 0.0)) throw InvalidSpec("seed_min_separation must be > 0");
  if (!(min_preview > 0.0)) throw InvalidSpec("min_preview must be > 0");
  if (!(adjacent_min_lateral > 0.0)) throw InvalidSpec("adjacent_min_lateral must be > 0");
  if (output_points < 2) throw InvalidSpec("output_points must be >= 2");
  if (!(max_residual > 0.0)) throw InvalidSpec("max_residual must be > 0");
  if (!(residual_tie_tolerance >= 0.0)) throw InvalidSpec("residual_tie_tolerance must be >= 0");
}

const char* to_string(LineRole role) {
  switch (role) {
    case LineRole::EgoLeft:
      return "ego_left";
    case LineRole::EgoRight:
      return "ego_right";
    case LineRole::AdjacentLeft:
      return "adjacent_left";
    case LineRole::AdjacentRight:
      return "adjacent_right";
  }
  return "unknown";
}

PointPool pool_points(const SensorCloud& cloud) {
  PointPool pool;
  pool.reserve(cloud.point_count());
  for (const auto* list : {&cloud.left, &cloud.right}) {
    for (const LineObject& line : *list) {
      for (std::size_t i = 0; i < line.points.size(); ++i) {
        pool.push_back({line.points[i], line.id, line.truth_label, line.marking_type, static_cast<int>(i)});
      }
    }
  }
  std::sort(pool.begin(), pool.end(), [](const PooledPoint& a, const PooledPoint& b) {
    if (a.point.x != b.point.x) return a.point.x < b.point.x;
    if (a.point.y != b.point.y) return a.point.y < b.point.y;
    if (a.line_id != b.line_id) return a.line_id < b.line_id;
    return a.point_index < b.point_index;
  });
  return pool;
}

double TracedLine::lateral_at(double x) const {
  if (points.empty()) return 0.0;
  if (points.size() == 1) return points.front().y;
  auto it = std::upper_bound(points.begin(), points.end(), x,
                             [](double v, const PointXY& p) { return v < p.x; });
  std::size_t hi = static_cast<std::size_t>(it - points.begin());
  hi = std::clamp<std::size_t>(hi, 1, points.size() - 1);
  const PointXY& p0 = points[hi - 1];
  const PointXY& p1 = points[hi];
  const double t = (x - p0.x) / (p1.x - p0.x);
  return p0.y + t * (p1.y - p0.y);
}

std::vector<const TracedLine*> LaneSet::lines() const {
  std::vector<const TracedLine*> out{&ego_left, &ego_right};
  if (adjacent_left) out.push_back(&*adjacent_left);
  if (adjacent_right) out.push_back(&*adjacent_right);
  return out;
}

std::array<std::size_t, 3> select_seeds(const PointPool& pool, Side side_hint,
                                        std::span<const TracedLine* const> exclusion,
                                        const AldmParams& params, const ConsumedMask* consumed) {
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const PointXY& p = pool[i].point;
    if (p.x > params.seed_max_x) break;
    if (consumed && (*consumed)[i]) continue;
    if (side_hint == Side::Left ? !(p.y > 0.0) : !(p.y < 0.0)) continue;
    bool excluded = false;
    for (const TracedLine* line : exclusion) {
      const double ref = line->lateral_at(p.x);
      const bool outward = side_hint == Side::Left ? p.y > ref : p.y < ref;
      if (!outward || std::abs(p.y - ref) < params.adjacent_min_lateral) {
        excluded = true;
        break;
      }
    }
    if (!excluded) candidates.push_back(i);
  }
  std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
    const double ya = std::abs(pool[a].point.y);
    const double yb = std::abs(pool[b].point.y);
    if (ya != yb) return ya < yb;
    return pool[a].point.x < pool[b].point.x;
  });

  std::vector<std::size_t> chosen;
  for (std::size_t idx : candidates) {
    const double x = pool[idx].point.x;
    const bool separated = std::all_of(chosen.begin(), chosen.end(), [&](std::size_t c) {
      return std::abs(pool[c].point.x - x) >= params.seed_min_separation;
    });
    if (!separated) continue;
    chosen.push_back(idx);
    if (chosen.size() == 3) break;
  }
  if (chosen.size() < 3) {
    throw SeedFailure(std::string("only ") + std::to_string(chosen.size()) + " seed point(s) on the " +
                      to_string(side_hint) + " side");
  }
  std::sort(chosen.begin(), chosen.end(), [&](std::size_t a, std::size_t b) {
    return pool[a].point.x < pool[b].point.x;
  });
  return {chosen[0], chosen[1], chosen[2]};
}

namespace {

// Trend through the last three accepted points; linear through the last two if they repeat x.
QuadCoeffs trend(const PointXY& a, const PointXY& b, const PointXY& c) {
  try {
    return fit_quadratic(a, b, c);
  } catch (const DegenerateInput&) {
    if (b.x == c.x) return {0.0, 0.0, c.y};
    const double slope = (c.y - b.y) / (c.x - b.x);
    return {0.0, slope, c.y - slope * c.x};
  }
}

}  // namespace

TracedLine trace_line(const PointPool& pool, const std::array<std::size_t, 3>& seeds, LineRole role,
                      const AldmParams& params, ConsumedMask& consumed) {
  consumed.resize(pool.size(), 0);
  std::vector<std::size_t> accepted(seeds.begin(), seeds.end());
  std::sort(accepted.begin(), accepted.end(),
            [&](std::size_t a, std::size_t b) { return pool[a].point.x < pool[b].point.x; });
  for (std::size_t i : accepted) consumed[i] = 1;

  for (;;) {
    const std::size_t n = accepted.size();
    const PointXY& last = pool[accepted[n - 1]].point;
    const QuadCoeffs q = trend(pool[accepted[n - 3]].point, pool[accepted[n - 2]].point, last);
    const double window_end = last.x + params.max_gap;

    auto it = std::upper_bound(pool.begin(), pool.end(), last.x,
                               [](double v, const PooledPoint& p) { return v < p.point.x; });
    std::optional<std::size_t> best;
    double best_residual = 0.0;
    for (std::size_t i = static_cast<std::size_t>(it - pool.begin()); i < pool.size(); ++i) {
      const PointXY& p = pool[i].point;
      if (p.x > window_end) break;
      if (consumed[i]) continue;
      const double r = std::abs(p.y - q(p.x));
      if (r > params.max_residual) continue;
      if (!best || r < best_residual - params.residual_tie_tolerance) {
        best = i;
        best_residual = r;
      } else if (std::abs(r - best_residual) <= params.residual_tie_tolerance) {
        const PointXY& b = pool[*best].point;
        if (p.x == b.x && std::abs(p.y) < std::abs(b.y)) {
          best = i;
          best_residual = r;
        }
      }
    }
    if (!best) break;
    consumed[*best] = 1;
    accepted.push_back(*best);
  }

  TracedLine line;
  line.role = role;
  line.points.reserve(accepted.size());
  line.provenance.reserve(accepted.size());
  for (std::size_t i : accepted) {
    const PooledPoint& p = pool[i];
    line.points.push_back(p.point);
    line.provenance.push_back({p.line_id, p.truth_label, p.marking_type, p.point_index});
  }
  if (line.preview() < params.min_preview) {
    line.warnings.push_back(std::string(to_string(role)) + " preview " + detail::fixed(line.preview(), 2) +
                            " m below minimum " + detail::fixed(params.min_preview, 2) + " m");
  }
  return line;
}

TracedLine trace_line(const PointPool& pool, const std::array<std::size_t, 3>& seeds, LineRole role,
                      const AldmParams& params) {
  ConsumedMask consumed(pool.size(), 0);
  return trace_line(pool, seeds, role, params, consumed);
}

LaneSet detect_lanes(const SensorCloud& cloud, const AldmParams& params) {
  params.validate();
  const PointPool pool = pool_points(cloud);
  ConsumedMask consumed(pool.size(), 0);

  std::string failure;
  std::optional<TracedLine> ego_left;
  std::optional<TracedLine> ego_right;
  try {
    const auto seeds = select_seeds(pool, Side::Left, {}, params, &consumed);
    ego_left = trace_line(pool, seeds, LineRole::EgoLeft, params, consumed);
  } catch (const SeedFailure& e) {
    failure += std::string("ego left: ") + e.what();
  }
  try {
    const auto seeds = select_seeds(pool, Side::Right, {}, params, &consumed);
    ego_right = trace_line(pool, seeds, LineRole::EgoRight, params, consumed);
  } catch (const SeedFailure& e) {
    if (!failure.empty()) failure += "; ";
    failure += std::string("ego right: ") + e.what();
  }
  if (!ego_left || !ego_right) throw LaneDetectionFailure(failure, !ego_left, !ego_right);

  LaneSet lanes{std::move(*ego_left), std::move(*ego_right), std::nullopt, std::nullopt};
  const std::array<const TracedLine*, 2> ego{&lanes.ego_left, &lanes.ego_right};
  try {
    const auto seeds = select_seeds(pool, Side::Left, ego, params, &consumed);
    lanes.adjacent_left = trace_line(pool, seeds, LineRole::AdjacentLeft, params, consumed);
  } catch (const SeedFailure&) {
  }
  try {
    const auto seeds = select_seeds(pool, Side::Right, ego, params, &consumed);
    lanes.adjacent_right = trace_line(pool, seeds, LineRole::AdjacentRight, params, consumed);
  } catch (const SeedFailure&) {
  }
  return lanes;
}

TracedLine downsample(const TracedLine& line, int n) {
  if (n < 2) throw InvalidSpec("downsample needs n >= 2");
  if (line.points.size() < 2) throw InvalidSpec("downsample needs a line with at least 2 points");
  const std::size_t len = line.points.size();
  if (len <= static_cast<std::size_t>(n)) return line;
  TracedLine out;
  out.role = line.role;
  out.warnings = line.warnings;
  const std::size_t span = len - 1;
  const std::size_t steps = static_cast<std::size_t>(n - 1);
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
    // round-half-up of i * span / steps in integer arithmetic
    const std::size_t idx = (2 * i * span + steps) / (2 * steps);
    out.points.push_back(line.points[idx]);
    out.provenance.push_back(line.provenance[idx]);
  }
  return out;
}

void write_traced_csv(std::ostream& out, const TracedLine& line, const SensorCloud& cloud, bool header) {
  using detail::fixed;
  std::unordered_map<int, Side> side_by_id;
  for (const auto& l : cloud.left) side_by_id[l.id] = l.side;
  for (const auto& l : cloud.right) side_by_id[l.id] = l.side;
  if (header) out << "side,line_id,truth_label,marking_type,point_index,x,y,z,role\n";
  for (std::size_t i = 0; i < line.points.size(); ++i) {
    const PointXY& p = line.points[i];
    const Provenance& src = line.provenance[i];
    const auto side = side_by_id.find(src.line_id);
    out << (side == side_by_id.end() ? "" : to_string(side->second)) << ',' << src.line_id << ','
        << src.truth_label << ',' << src.marking_type << ',' << src.point_index << ',' << fixed(p.x) << ','
        << fixed(p.y) << ',' << fixed(p.z) << ',' << to_string(line.role) << '\n';
  }
}

}  // namespace aldm
