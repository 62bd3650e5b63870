// Copyright 2026 The topp Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     https://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "topp/path.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "gtest/gtest.h"
#include "support.hpp"

namespace topp {
namespace {

double norm(const Vector& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

TEST(BuildPath, TwoPointsOneDofIsMonotone) {
  const Path path = build_path({{0.0}, {1.0}}, PathKind::kCubicSpline);
  EXPECT_EQ(path.dof(), 1u);
  EXPECT_NEAR(path.s_end(), 1.0, 1e-15);
  EXPECT_NEAR(path.eval(0.0).q[0], 0.0, 1e-15);
  EXPECT_NEAR(path.eval(path.s_end()).q[0], 1.0, 1e-15);
  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double q = path.eval(path.s_end() * i / 100.0).q[0];
    EXPECT_GT(q, prev);
    prev = q;
  }
}

TEST(BuildPath, CollinearWaypointsHaveNoCurvature) {
  for (PathKind kind : {PathKind::kCubicSpline, PathKind::kBezier}) {
    const Path path = build_path({{0.0, 0.0}, {1.0, 0.0}}, kind);
    for (int i = 0; i <= 20; ++i) {
      const PathPoint p = path.eval(path.s_end() * i / 20.0);
      EXPECT_NEAR(p.q_ss[0], 0.0, 1e-12);
      EXPECT_NEAR(p.q_ss[1], 0.0, 1e-12);
      EXPECT_NEAR(p.q[1], 0.0, 1e-15);
    }
  }
}

TEST(BuildPath, LengthIsChordSum) {
  const std::vector<Vector> wp = {{0.0, 0.0}, {3.0, 4.0}, {3.0, 5.0}};
  EXPECT_NEAR(build_path(wp, PathKind::kCubicSpline).s_end(), 6.0, 1e-12);
  EXPECT_NEAR(build_path(wp, PathKind::kBezier).s_end(), 6.0, 1e-12);
}

TEST(BuildPath, InterpolatesWaypoints) {
  std::mt19937_64 rng(3);
  std::vector<Vector> wp;
  for (int k = 0; k < 5; ++k) wp.push_back(testing::random_point(rng, 3, -1.0, 1.0));
  for (PathKind kind : {PathKind::kCubicSpline, PathKind::kBezier}) {
    const Path path = build_path(wp, kind);
    ASSERT_EQ(path.knots().size(), wp.size());
    for (std::size_t k = 0; k < wp.size(); ++k) {
      const PathPoint p = path.eval(path.knots()[k]);
      for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(p.q[j], wp[k][j], 1e-12);
    }
  }
}

TEST(BuildPath, RejectsBadWaypoints) {
  EXPECT_THROW(build_path({{0.0}}, PathKind::kCubicSpline), std::invalid_argument);
  EXPECT_THROW(build_path({{0.0}, {1.0, 2.0}}, PathKind::kBezier), std::invalid_argument);
  EXPECT_THROW(build_path({{1.0}, {1.0}}, PathKind::kCubicSpline), std::invalid_argument);
}

TEST(BuildPath, RandomSevenDofKnotsMatchFiniteDifference) {
  std::mt19937_64 rng(11);
  std::vector<Vector> wp;
  for (int k = 0; k < 4; ++k) wp.push_back(testing::random_point(rng, 7, -M_PI, M_PI));
  for (PathKind kind : {PathKind::kCubicSpline, PathKind::kBezier}) {
    const Path path = build_path(wp, kind);
    const double h = 1e-7;
    for (std::size_t k = 1; k + 1 < path.knots().size(); ++k) {
      const double s = path.knots()[k];
      const PathPoint p = path.eval(s);
      const PathPoint lo = path.eval(s - h);
      const PathPoint hi = path.eval(s + h);
      for (std::size_t j = 0; j < 7; ++j) {
        const double fd = (hi.q[j] - lo.q[j]) / (2.0 * h);
        EXPECT_NEAR(fd, p.q_s[j], 1e-6 * norm(p.q_s));
      }
    }
  }
}

TEST(Eval, StraightLine) {
  const Vector d = {0.6, -0.8};
  const Path path({0.0, 2.0}, {Path::PolynomialPiece{{{1.0, d[0]}, {2.0, d[1]}}}});
  for (int i = 0; i <= 10; ++i) {
    const double s = 0.2 * i;
    const PathPoint p = path.eval(s);
    EXPECT_NEAR(p.q[0], 1.0 + s * d[0], 1e-15);
    EXPECT_DOUBLE_EQ(p.q_s[0], d[0]);
    EXPECT_DOUBLE_EQ(p.q_s[1], d[1]);
    EXPECT_DOUBLE_EQ(p.q_ss[0], 0.0);
    EXPECT_DOUBLE_EQ(p.q_ss[1], 0.0);
  }
}

TEST(Eval, CircularArc) {
  const double r = 1.7;
  const Path path({0.0, 2.0 * M_PI * r},
                  {Path::ArcPiece{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, r}});
  for (int i = 0; i <= 40; ++i) {
    const double s = path.s_end() * i / 40.0;
    const PathPoint p = path.eval(s);
    EXPECT_NEAR(p.q[0], r * std::cos(s / r), 1e-12);
    EXPECT_NEAR(p.q[1], r * std::sin(s / r), 1e-12);
    EXPECT_NEAR(norm(p.q_s), 1.0, 1e-12);
    EXPECT_NEAR(p.q_ss[0], -p.q[0] / (r * r), 1e-12);
    EXPECT_NEAR(p.q_ss[1], -p.q[1] / (r * r), 1e-12);
  }
}

// Derivative of a power series by the power rule, evaluated term by term.
double poly_derivative(const Vector& c, double t, int order) {
  double sum = 0.0;
  for (std::size_t i = static_cast<std::size_t>(order); i < c.size(); ++i) {
    double f = 1.0;
    for (int m = 0; m < order; ++m) f *= static_cast<double>(i - m);
    sum += f * c[i] * std::pow(t, static_cast<double>(i) - order);
  }
  return sum;
}

TEST(Eval, CubicPieceMatchesSymbolicDerivative) {
  const Vector c0 = {0.3, -1.2, 2.5, -0.7};
  const Vector c1 = {1.0, 0.5, 0.0, 0.25};
  const Path path({0.0, 1.5}, {Path::PolynomialPiece{{c0, c1}}});
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.5);
  for (int n = 0; n < 10; ++n) {
    const double s = u(rng);
    const PathPoint p = path.eval(s);
    EXPECT_NEAR(p.q[0], poly_derivative(c0, s, 0), 1e-12);
    EXPECT_NEAR(p.q_s[0], poly_derivative(c0, s, 1), 1e-12);
    EXPECT_NEAR(p.q_s[1], poly_derivative(c1, s, 1), 1e-12);
    EXPECT_NEAR(p.q_ss[0], poly_derivative(c0, s, 2), 1e-12);
    EXPECT_NEAR(p.q_ss[1], poly_derivative(c1, s, 2), 1e-12);
  }
}

TEST(Eval, KnotReturnsRightLimitAndLeftOnRequest) {
  // q = s^2 on [0, 1], then the tangent line continuing at slope 2.
  const Path path({0.0, 1.0, 2.0}, {Path::PolynomialPiece{{{0.0, 0.0, 1.0}}},
                                    Path::PolynomialPiece{{{1.0, 2.0}}}});
  EXPECT_DOUBLE_EQ(path.eval(1.0).q_ss[0], 0.0);
  EXPECT_DOUBLE_EQ(path.eval_left(1.0).q_ss[0], 2.0);
  EXPECT_DOUBLE_EQ(path.eval(1.0).q_s[0], path.eval_left(1.0).q_s[0]);
}

TEST(Eval, DomainSlack) {
  const Path path = testing::line_path(1.0);
  EXPECT_NO_THROW(path.eval(1.0 + 0.5e-12));
  EXPECT_NEAR(path.eval(-0.5e-12).q[0], 0.0, 1e-15);
  EXPECT_THROW(path.eval(1.0 + 1e-6), std::domain_error);
  EXPECT_THROW(path.eval(-1e-6), std::domain_error);
}

TEST(Path, RejectsBadConstruction) {
  EXPECT_THROW(Path({0.0}, {}), std::invalid_argument);
  EXPECT_THROW(Path({0.5, 1.0}, {Path::PolynomialPiece{{{0.0, 1.0}}}}),
               std::invalid_argument);
  EXPECT_THROW(Path({0.0, 1.0, 1.0}, {Path::PolynomialPiece{{{0.0, 1.0}}},
                                      Path::PolynomialPiece{{{1.0, 1.0}}}}),
               std::invalid_argument);
}

TEST(BezierPath, ParameterizedByPolygonLength) {
  const Path path = bezier_path({Vector{0.0, 0.0}, Vector{1.0, 0.0}, Vector{1.0, 1.0},
                                 Vector{2.0, 1.0}});
  EXPECT_NEAR(path.s_end(), 3.0, 1e-12);
  EXPECT_NEAR(path.eval(path.s_end()).q[0], 2.0, 1e-12);
  EXPECT_NEAR(path.eval(path.s_end()).q[1], 1.0, 1e-12);
  // dq/ds at tau = 0 is 3 (P1 - P0) / L.
  EXPECT_NEAR(path.eval(0.0).q_s[0], 1.0, 1e-12);
}

TEST(BlendedPath, UnitSpeedAndWithinDeviation) {
  const std::vector<Vector> wp = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}};
  const double dev = 0.05;
  const Path path = blended_path(wp, dev);
  double closest = kInf;
  for (int i = 0; i <= 2000; ++i) {
    const PathPoint p = path.eval(path.s_end() * i / 2000.0);
    EXPECT_NEAR(norm(p.q_s), 1.0, 1e-9);
    closest = std::min(closest, std::hypot(p.q[0] - 1.0, p.q[1]));
  }
  EXPECT_LE(closest, dev + 1e-6);
  EXPECT_NEAR(path.eval(path.s_end()).q[1], 1.0, 1e-12);
}

}  // namespace
}  // namespace topp
