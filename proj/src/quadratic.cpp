#include "aldm/quadratic.hpp"

#include <cmath>

#include "aldm/errors.hpp"

namespace aldm {

double determinant(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 adjugate(const Mat3& m) {
  Mat3 adj{};
  adj[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  adj[0][1] = m[0][2] * m[2][1] - m[0][1] * m[2][2];
  adj[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
  adj[1][0] = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  adj[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
  adj[1][2] = m[0][2] * m[1][0] - m[0][0] * m[1][2];
  adj[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  adj[2][1] = m[0][1] * m[2][0] - m[0][0] * m[2][1];
  adj[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  return adj;
}

Mat3 inverse_adjugate(const Mat3& m) {
  const double det = determinant(m);
  if (det == 0.0 || !std::isfinite(det)) throw DegenerateInput("singular 3x3 matrix");
  Mat3 inv = adjugate(m);
  for (auto& row : inv) {
    for (double& v : row) v /= det;
  }
  return inv;
}

QuadCoeffs fit_quadratic(const PointXY& a, const PointXY& b, const PointXY& c) {
  if (a.x == b.x || a.x == c.x || b.x == c.x) {
    throw DegenerateInput("quadratic fit needs three distinct x values");
  }
  const Mat3 vandermonde{{{a.x * a.x, a.x, 1.0}, {b.x * b.x, b.x, 1.0}, {c.x * c.x, c.x, 1.0}}};
  const Mat3 inv = inverse_adjugate(vandermonde);
  const std::array<double, 3> y{a.y, b.y, c.y};
  std::array<double, 3> coef{};
  for (int i = 0; i < 3; ++i) {
    coef[i] = inv[i][0] * y[0] + inv[i][1] * y[1] + inv[i][2] * y[2];
  }
  return {coef[0], coef[1], coef[2]};
}

}  // namespace aldm
