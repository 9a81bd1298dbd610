#include "aldm/trajectory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

#include "aldm/errors.hpp"
#include "text_format.hpp"

namespace aldm {

namespace {

using Mat4 = std::array<std::array<double, 4>, 4>;
using Vec4 = std::array<double, 4>;

// Gaussian elimination with partial pivoting on a symmetric positive (semi)definite system.
Vec4 solve4(Mat4 a, Vec4 b) {
  double scale = 0.0;
  for (int i = 0; i < 4; ++i) scale = std::max(scale, std::abs(a[i][i]));
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) <= 1e-13 * scale) throw DegenerateInput("rank-deficient cubic fit");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int r = col + 1; r < 4; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  Vec4 x{};
  for (int r = 3; r >= 0; --r) {
    double acc = b[r];
    for (int c = r + 1; c < 4; ++c) acc -= a[r][c] * x[c];
    x[r] = acc / a[r][r];
  }
  return x;
}

}  // namespace

CubicCoeffs fit_cubic(std::span<const PointXY> points) {
  std::vector<double> xs;
  xs.reserve(points.size());
  for (const auto& p : points) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  if (std::unique(xs.begin(), xs.end()) - xs.begin() < 4) {
    throw DegenerateInput("cubic fit needs at least four distinct x values");
  }

  double mean = 0.0;
  for (const auto& p : points) mean += p.x;
  mean /= static_cast<double>(points.size());
  double half_range = 0.0;
  for (const auto& p : points) half_range = std::max(half_range, std::abs(p.x - mean));

  Mat4 normal{};
  Vec4 rhs{};
  for (const auto& p : points) {
    const double u = (p.x - mean) / half_range;
    const Vec4 basis{1.0, u, u * u, u * u * u};
    for (int i = 0; i < 4; ++i) {
      rhs[i] += basis[i] * p.y;
      for (int j = 0; j < 4; ++j) normal[i][j] += basis[i] * basis[j];
    }
  }
  const Vec4 d = solve4(normal, rhs);

  // Undo the scaling, then expand (x - mean)^k.
  const double e0 = d[0];
  const double e1 = d[1] / half_range;
  const double e2 = d[2] / (half_range * half_range);
  const double e3 = d[3] / (half_range * half_range * half_range);
  const double m = mean;
  return {e0 - e1 * m + e2 * m * m - e3 * m * m * m, e1 - 2.0 * e2 * m + 3.0 * e3 * m * m,
          e2 - 3.0 * e3 * m, e3};
}

double sum_squared_residuals(const CubicCoeffs& cubic, std::span<const PointXY> points) {
  double sum = 0.0;
  for (const auto& p : points) {
    const double r = p.y - cubic(p.x);
    sum += r * r;
  }
  return sum;
}

namespace {

std::pair<double, double> x_extent(std::span<const PointXY> points) {
  const auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                            [](const PointXY& a, const PointXY& b) { return a.x < b.x; });
  return {lo->x, hi->x};
}

}  // namespace

Trajectory compute_trajectory(std::span<const PointXY> left, std::span<const PointXY> right,
                              std::size_t samples) {
  if (left.size() < 4 || right.size() < 4) throw DegenerateInput("trajectory needs >= 4 points per boundary");
  if (samples < 2) throw InvalidSpec("trajectory needs >= 2 center samples");
  const auto [l_lo, l_hi] = x_extent(left);
  const auto [r_lo, r_hi] = x_extent(right);
  const double lo = std::max(l_lo, r_lo);
  const double hi = std::min(l_hi, r_hi);
  if (!(hi > lo)) throw FrameError("left and right boundaries do not overlap longitudinally");

  Trajectory t;
  t.left = fit_cubic(left);
  t.right = fit_cubic(right);
  t.x_begin = lo;
  t.x_end = hi;
  t.center_samples.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = (i + 1 == samples) ? hi : lo + (hi - lo) * static_cast<double>(i) / (samples - 1);
    t.center_samples.push_back({x, t.center(x), 0.0});
  }
  return t;
}

Trajectory compute_trajectory(const TracedLine& left, const TracedLine& right, std::size_t samples) {
  return compute_trajectory(std::span<const PointXY>(left.points), std::span<const PointXY>(right.points),
                            samples);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, bool header) {
  using detail::fixed;
  if (header) out << "x,y_left_fit,y_right_fit,y_center\n";
  for (const PointXY& c : trajectory.center_samples) {
    out << fixed(c.x) << ',' << fixed(trajectory.left(c.x)) << ',' << fixed(trajectory.right(c.x)) << ','
        << fixed(c.y) << '\n';
  }
}

}  // namespace aldm
