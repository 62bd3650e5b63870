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

#include "topp/switchpoints.hpp"

#include <cmath>
#include <map>
#include <vector>

#include "gtest/gtest.h"
#include "support.hpp"

namespace topp {
namespace {

ConstraintGrid inertia_grid(const std::vector<double>& a) {
  std::map<double, double> by_s;
  for (std::size_t i = 0; i < a.size(); ++i) by_s[static_cast<double>(i)] = a[i];
  return testing::make_grid(static_cast<double>(a.size() - 1), a.size() - 1, 1,
                            [&](double s) {
                              return std::vector<ConstraintRow>{{by_s.at(s), 1.0, -1.0}};
                            });
}

// Row 0 loses inertia at s0 with (b, c) fixed; rows 1 and 2 alone put the
// curve at sqrt(u_dagger).
ConstraintGrid singular_grid(double s0, double b, double c, double u_dagger,
                             std::size_t N = 100) {
  return testing::make_grid(1.0, N, 3, [=](double s) {
    return std::vector<ConstraintRow>{
        {s - s0, b, c}, {1.0, 1.0, -u_dagger}, {-1.0, 1.0, -u_dagger}};
  });
}

TEST(FindZeroInertia, LinearRoot) {
  const auto z = find_zero_inertia(inertia_grid({-0.1, -0.02, 0.03}));
  ASSERT_EQ(z.size(), 1u);
  EXPECT_EQ(z[0].interval, 1u);
  EXPECT_NEAR(z[0].s_star, 1.0 + 0.02 / 0.05, 1e-12);
  EXPECT_EQ(z[0].direction, 1);
}

TEST(FindZeroInertia, NoSignChange) {
  EXPECT_TRUE(find_zero_inertia(inertia_grid({1.0, 1.0, 1.0})).empty());
}

TEST(FindZeroInertia, TwoFlipsOppositeDirections) {
  const auto z = find_zero_inertia(inertia_grid({0.05, -0.01, 0.04}));
  ASSERT_EQ(z.size(), 2u);
  EXPECT_NEAR(z[0].s_star, 0.05 / 0.06, 1e-12);
  EXPECT_NEAR(z[1].s_star, 1.0 + 0.01 / 0.05, 1e-12);
  EXPECT_EQ(z[0].direction, -1);
  EXPECT_EQ(z[1].direction, 1);
}

ZeroInertiaResult classify_single(const ConstraintGrid& grid) {
  const auto z = find_zero_inertia(grid);
  EXPECT_EQ(z.size(), 1u);
  return classify_zero_inertia(grid, z.at(0));
}

TEST(ClassifyZeroInertia, NegativeBIsNotSingular) {
  EXPECT_EQ(classify_single(singular_grid(0.503, -1.0, -1.0, 100.0)).cls,
            ZeroInertiaClass::kNotSingular);
}

TEST(ClassifyZeroInertia, SingularBelowOtherRows) {
  const ZeroInertiaResult r = classify_single(singular_grid(0.503, 1.0, -4.0, 100.0));
  EXPECT_EQ(r.cls, ZeroInertiaClass::kSingular);
  EXPECT_NEAR(r.sd_star, 2.0, 1e-12);
  EXPECT_NEAR(r.sd_dagger, 10.0, 1e-6);
  EXPECT_NEAR(r.lambda, 0.0, 1e-12);
}

TEST(ClassifyZeroInertia, OtherRowsBindFirst) {
  const ZeroInertiaResult r = classify_single(singular_grid(0.503, 1.0, -4.0, 1.0));
  EXPECT_EQ(r.cls, ZeroInertiaClass::kNotSingular);
  EXPECT_NEAR(r.sd_dagger, 1.0, 1e-6);
}

TEST(ClassifyZeroInertia, PositiveCIsInfeasible) {
  EXPECT_EQ(classify_single(singular_grid(0.503, 1.0, 0.5, 100.0)).cls,
            ZeroInertiaClass::kInfeasible);
}

TEST(SingularSlope, Formula) {
  EXPECT_DOUBLE_EQ(singular_slope(1.0, 0.3, 0.0, 0.0, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(singular_slope(1.0, 0.0, 0.0, -2.0, 1.0), 1.0);
  EXPECT_THROW(singular_slope(0.0, 0.0, 1.0, 1.0, 1.0), std::domain_error);
}

TEST(SingularSlope, GridDifferencesMatchLinearCoefficients) {
  // b = 1 + s, c = -4 - 2 s, a = s - 0.5: lambda = -(u + -2) / ((2 b + 1) sd).
  const ConstraintGrid grid = testing::make_grid(1.0, 50, 1, [](double s) {
    return std::vector<ConstraintRow>{{s - 0.5, 1.0 + s, -4.0 - 2.0 * s}};
  });
  const double u = 5.0 / 1.5;
  const double want = -(u - 2.0) / ((2.0 * 1.5 + 1.0) * std::sqrt(u));
  EXPECT_NEAR(singular_slope(grid, 0, 0.5, std::sqrt(u)), want, 1e-12);
}

TEST(SingularSlope, ArcUnderAccelerationBoundsIsFlat) {
  const Path path({0.0, 1.0, 1.0 + M_PI},
                  {Path::PolynomialPiece{{{0.0, 1.0}, {0.0, 0.0}}},
                   Path::ArcPiece{{1.0, 1.0}, {0.0, -1.0}, {1.0, 0.0}, 1.0}});
  const ConstraintGrid grid = discretize({KinematicLimits{{10.0, 10.0}, {1.0, 1.0}}}, path, 400);
  const SwitchPointReport rep = find_switch_points(grid, mvc_curves(grid));
  ASSERT_GE(rep.singular_count(), 1u);
  for (const SwitchPoint& p : rep.points) {
    if (p.kind != SwitchKind::kSingular) continue;
    EXPECT_LE(std::abs(p.lambda), 1e-6);
    EXPECT_NEAR(p.s_star, 1.0 + M_PI / 2.0, 1e-6);
  }
}

TEST(FindSwitchPoints, FlatCurveWithDownwardField) {
  // MVC = 1 everywhere, alpha = -1 on it.
  const ConstraintGrid grid = testing::make_grid(1.0, 50, 2, [](double) {
    return std::vector<ConstraintRow>{{1.0, 2.0, -1.0}, {-1.0, -1.0, 0.0}};
  });
  const MvcCurves curves = mvc_curves(grid);
  EXPECT_NEAR(curves.mvc[10], 1.0, 1e-8);
  EXPECT_TRUE(find_switch_points(grid, curves).points.empty());
}

TEST(FindSwitchPoints, CeilingDropIsDiscontinuous) {
  const ConstraintGrid grid = testing::make_grid(
      1.0, 20, 2,
      [](double) {
        return std::vector<ConstraintRow>{{1.0, 0.0, -1.0}, {-1.0, 0.0, -1.0}};
      },
      [](double s) { return s < 0.5 - 1e-12 ? 5.0 : 1.0; });
  const SwitchPointReport rep = find_switch_points(grid, mvc_curves(grid));
  ASSERT_EQ(rep.points.size(), 1u);
  EXPECT_EQ(rep.points[0].kind, SwitchKind::kDiscontinuous);
  EXPECT_DOUBLE_EQ(rep.points[0].s_star, 0.5);
  EXPECT_DOUBLE_EQ(rep.points[0].sd_on_mvc, 1.0);
}

// Closed form of the singular_grid curve: u = (4 + 100 |a|) / (1 + |a|).
double v_curve(double s, double s0) {
  const double a = std::abs(s - s0);
  return std::sqrt((4.0 + 100.0 * a) / (1.0 + a));
}

TEST(FindSwitchPoints, SingleSingularKink) {
  const double s0 = 0.503;
  const ConstraintGrid grid = singular_grid(s0, 1.0, -4.0, 100.0, 200);
  const MvcCurves curves = mvc_curves(grid);
  // Brute-force scan: the one-sided slopes of the curve differ only next to s0.
  std::size_t kinks = 0;
  for (std::size_t i = 1; i + 1 < grid.num_points(); ++i) {
    EXPECT_NEAR(curves.mvc[i], v_curve(grid.s(i), s0), 1e-7);
    const double left = (curves.mvc[i] - curves.mvc[i - 1]) / grid.ds();
    const double right = (curves.mvc[i + 1] - curves.mvc[i]) / grid.ds();
    if (std::abs(right - left) > 0.5 * std::max(std::abs(left), std::abs(right))) {
      ++kinks;
      EXPECT_NEAR(grid.s(i), s0, 2.0 * grid.ds());
    }
  }
  EXPECT_GE(kinks, 1u);

  const SwitchPointReport rep = find_switch_points(grid, curves);
  ASSERT_EQ(rep.points.size(), 1u);
  EXPECT_EQ(rep.points[0].kind, SwitchKind::kSingular);
  EXPECT_NEAR(rep.points[0].s_star, s0, 1e-9);
  EXPECT_NEAR(rep.points[0].sd_star, 2.0, 1e-9);
  EXPECT_EQ(rep.points[0].row, 0);
}

}  // namespace
}  // namespace topp
