#pragma once

#include <cmath>

namespace aldm {

struct Vec2 {
  double x{};
  double y{};
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double k, Vec2 v) { return {k * v.x, k * v.y}; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

// Position and heading in the world frame (x east, y north, heading CCW from +x).
struct Pose2 {
  Vec2 position;
  double heading{};

  // Express a world point in this pose's local frame (x forward, y left).
  Vec2 to_local(Vec2 world) const {
    const Vec2 d = world - position;
    const double c = std::cos(heading);
    const double s = std::sin(heading);
    return {c * d.x + s * d.y, -s * d.x + c * d.y};
  }
};

// A point in the sensor frame: x longitudinal, y lateral (+left), z carried along.
struct PointXY {
  double x{};
  double y{};
  double z{};

  friend bool operator==(const PointXY&, const PointXY&) = default;
};

}  // namespace aldm
