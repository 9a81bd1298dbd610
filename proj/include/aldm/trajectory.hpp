#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "aldm/aldm_core.hpp"
#include "aldm/geometry.hpp"

namespace aldm {

// y = c3 x^3 + c2 x^2 + c1 x + c0
struct CubicCoeffs {
  double c0{};
  double c1{};
  double c2{};
  double c3{};

  double operator()(double x) const { return ((c3 * x + c2) * x + c1) * x + c0; }
};

// Least-squares cubic; x is centred and scaled before forming the normal equations.
// Throws DegenerateInput with fewer than four distinct x values.
CubicCoeffs fit_cubic(std::span<const PointXY> points);

double sum_squared_residuals(const CubicCoeffs& cubic, std::span<const PointXY> points);

struct Trajectory {
  CubicCoeffs left;
  CubicCoeffs right;
  double x_begin{};
  double x_end{};
  std::vector<PointXY> center_samples;

  // Mean of the two boundary trend lines.
  double center(double x) const { return 0.5 * (left(x) + right(x)); }
};

// Cubic trend line per boundary; the centerline is sampled at `samples` x-positions spanning
// the overlap of both boundaries. Throws FrameError when the x-ranges do not overlap.
Trajectory compute_trajectory(std::span<const PointXY> left, std::span<const PointXY> right,
                              std::size_t samples = 13);
Trajectory compute_trajectory(const TracedLine& left, const TracedLine& right, std::size_t samples = 13);

// Rows: x,y_left_fit,y_right_fit,y_center
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, bool header = true);

}  // namespace aldm
