#pragma once

#include <array>

#include "aldm/geometry.hpp"

namespace aldm {

// Row-major 3x3 matrix.
using Mat3 = std::array<std::array<double, 3>, 3>;

double determinant(const Mat3& m);
Mat3 adjugate(const Mat3& m);
// Closed-form inverse adj(m) / det(m); throws DegenerateInput on a singular matrix.
Mat3 inverse_adjugate(const Mat3& m);

// y = a x^2 + b x + c
struct QuadCoeffs {
  double a{};
  double b{};
  double c{};

  double operator()(double x) const { return (a * x + b) * x + c; }
};

// Exact interpolation through three points with pairwise distinct x, solved with the
// adjugate inverse of the Vandermonde matrix [x^2 x 1].
QuadCoeffs fit_quadratic(const PointXY& a, const PointXY& b, const PointXY& c);

}  // namespace aldm
