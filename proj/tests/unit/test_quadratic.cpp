#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

#include "aldm/errors.hpp"
#include "aldm/quadratic.hpp"

namespace aldm {
namespace {

// Gaussian elimination with partial pivoting in extended precision.
std::array<long double, 3> eliminate(const PointXY& p0, const PointXY& p1, const PointXY& p2) {
  long double m[3][4];
  const PointXY pts[3] = {p0, p1, p2};
  for (int r = 0; r < 3; ++r) {
    const long double x = pts[r].x;
    m[r][0] = x * x;
    m[r][1] = x;
    m[r][2] = 1;
    m[r][3] = pts[r].y;
  }
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
    for (int k = 0; k < 4; ++k) std::swap(m[c][k], m[piv][k]);
    for (int r = c + 1; r < 3; ++r) {
      const long double f = m[r][c] / m[c][c];
      for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::array<long double, 3> sol{};
  for (int r = 2; r >= 0; --r) {
    long double acc = m[r][3];
    for (int k = r + 1; k < 3; ++k) acc -= m[r][k] * sol[k];
    sol[r] = acc / m[r][r];
  }
  return sol;
}

double rel(double got, long double want) {
  const long double scale = std::max<long double>(1.0L, std::fabs(want));
  return static_cast<double>(std::fabs(static_cast<long double>(got) - want) / scale);
}

TEST(FitQuadratic, Parabola) {
  const QuadCoeffs q = fit_quadratic({0, 0, 0}, {1, 1, 0}, {2, 4, 0});
  EXPECT_NEAR(q.a, 1, 1e-12);
  EXPECT_NEAR(q.b, 0, 1e-12);
  EXPECT_NEAR(q.c, 0, 1e-12);
}

TEST(FitQuadratic, HorizontalLine) {
  const QuadCoeffs q = fit_quadratic({0, 1, 0}, {5, 1, 0}, {10, 1, 0});
  EXPECT_NEAR(q.a, 0, 1e-12);
  EXPECT_NEAR(q.b, 0, 1e-12);
  EXPECT_NEAR(q.c, 1, 1e-12);
}

TEST(FitQuadratic, SeedTripleMatchesElimination) {
  const PointXY a{5.52, -1.8, 0}, b{7.52, -1.78, 0}, c{9.52, -1.73, 0};
  const QuadCoeffs q = fit_quadratic(a, b, c);
  const auto want = eliminate(a, b, c);
  EXPECT_LE(rel(q.a, want[0]), 1e-9);
  EXPECT_LE(rel(q.b, want[1]), 1e-9);
  EXPECT_LE(rel(q.c, want[2]), 1e-9);
  for (const PointXY& p : {a, b, c}) EXPECT_NEAR(q(p.x), p.y, 1e-9);
}

TEST(FitQuadratic, RandomTriplesMatchElimination) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> xs(0.0, 210.0), ys(-15.0, 15.0);
  int checked = 0;
  while (checked < 1000) {
    PointXY p[3];
    for (auto& v : p) v = {xs(rng), ys(rng), 0};
    if (std::abs(p[0].x - p[1].x) < 0.5 || std::abs(p[1].x - p[2].x) < 0.5 || std::abs(p[0].x - p[2].x) < 0.5)
      continue;
    const QuadCoeffs q = fit_quadratic(p[0], p[1], p[2]);
    const auto want = eliminate(p[0], p[1], p[2]);
    ASSERT_LE(rel(q.a, want[0]), 1e-9) << checked;
    ASSERT_LE(rel(q.b, want[1]), 1e-9) << checked;
    ASSERT_LE(rel(q.c, want[2]), 1e-9) << checked;
    for (const PointXY& v : p) ASSERT_NEAR(q(v.x), v.y, 1e-9 * std::max(1.0, std::abs(v.y)));
    ++checked;
  }
}

TEST(FitQuadratic, DuplicateXIsDegenerate) {
  EXPECT_THROW(fit_quadratic({1, 0, 0}, {1, 2, 0}, {3, 1, 0}), DegenerateInput);
  EXPECT_THROW(fit_quadratic({1, 0, 0}, {2, 2, 0}, {2, 1, 0}), DegenerateInput);
}

TEST(Adjugate, InverseTimesMatrixIsIdentity) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int t = 0; t < 100; ++t) {
    Mat3 m;
    for (auto& r : m)
      for (auto& v : r) v = u(rng);
    if (std::abs(determinant(m)) < 1e-3) continue;
    const Mat3 inv = inverse_adjugate(m);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double acc = 0;
        for (int k = 0; k < 3; ++k) acc += inv[i][k] * m[k][j];
        EXPECT_NEAR(acc, i == j ? 1.0 : 0.0, 1e-9);
      }
  }
  const Mat3 singular{{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}}};
  EXPECT_THROW(inverse_adjugate(singular), DegenerateInput);
}

}  // namespace
}  // namespace aldm
