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

#include "topp/constraints.hpp"

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "gtest/gtest.h"
#include "support.hpp"

namespace topp {
namespace {

using Mat2 = std::array<std::array<double, 2>, 2>;

// Textbook 2-link mass matrix, q2 relative to link 1.
Mat2 dense_mass(const Vector& q, const PlanarArm2Params& p) {
  const double c2 = std::cos(q[1]);
  Mat2 m;
  m[0][0] = p.I1 + p.I2 + p.m1 * p.lc1 * p.lc1 +
            p.m2 * (p.l1 * p.l1 + p.lc2 * p.lc2 + 2.0 * p.l1 * p.lc2 * c2);
  m[0][1] = p.I2 + p.m2 * (p.lc2 * p.lc2 + p.l1 * p.lc2 * c2);
  m[1][0] = m[0][1];
  m[1][1] = p.I2 + p.m2 * p.lc2 * p.lc2;
  return m;
}

// Height-based potential of both link centers, gravity along -y.
double potential(const Vector& q, const PlanarArm2Params& p) {
  const double y1 = p.lc1 * std::sin(q[0]);
  const double y2 = p.l1 * std::sin(q[0]) + p.lc2 * std::sin(q[0] + q[1]);
  return p.g0 * (p.m1 * y1 + p.m2 * y2);
}

// Velocity-product torque from Christoffel symbols of a finite-difference dM/dq.
std::array<double, 2> christoffel_torque(const Vector& q, const Vector& qd,
                                         const PlanarArm2Params& p) {
  const double h = 1e-6;
  std::array<Mat2, 2> dm;
  for (int k = 0; k < 2; ++k) {
    Vector lo = q, hi = q;
    lo[k] -= h;
    hi[k] += h;
    const Mat2 a = dense_mass(lo, p), b = dense_mass(hi, p);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) dm[k][i][j] = (b[i][j] - a[i][j]) / (2.0 * h);
  }
  std::array<double, 2> tau{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const double g = 0.5 * (dm[k][i][j] + dm[j][i][k] - dm[i][j][k]);
        tau[i] += g * qd[j] * qd[k];
      }
  return tau;
}

TEST(KinematicRows, OneDofLine) {
  const Vector qs = {1.0}, qss = {0.0}, qd = {4.0}, qdd = {20.0};
  const KinematicRows kr = kinematic_rows(qs, qss, qd, qdd);
  ASSERT_EQ(kr.rows.size(), 2u);
  EXPECT_DOUBLE_EQ(kr.rows[0].a, 1.0);
  EXPECT_DOUBLE_EQ(kr.rows[0].b, 0.0);
  EXPECT_DOUBLE_EQ(kr.rows[0].c, -20.0);
  EXPECT_DOUBLE_EQ(kr.rows[1].a, -1.0);
  EXPECT_DOUBLE_EQ(kr.rows[1].c, -20.0);
  EXPECT_DOUBLE_EQ(kr.cap, 4.0);
}

TEST(KinematicRows, UnitArc) {
  const Vector qs = {0.0, 1.0}, qss = {-1.0, 0.0}, qd = {10.0, 10.0}, qdd = {1.0, 1.0};
  const KinematicRows kr = kinematic_rows(qs, qss, qd, qdd);
  ASSERT_EQ(kr.rows.size(), 4u);
  auto has = [&](double a, double b, double c) {
    for (const auto& r : kr.rows)
      if (r.a == a && r.b == b && r.c == c) return true;
    return false;
  };
  EXPECT_TRUE(has(0.0, -1.0, -1.0));
  EXPECT_TRUE(has(-0.0, 1.0, -1.0));
  EXPECT_TRUE(has(1.0, 0.0, -1.0));
  EXPECT_TRUE(has(-1.0, -0.0, -1.0));
}

TEST(KinematicRows, CapFromLargestTangent) {
  const Vector qs = {2.0, 0.0}, qss = {0.0, 0.0}, qd = {4.0, 4.0}, qdd = {1.0, 1.0};
  EXPECT_DOUBLE_EQ(kinematic_rows(qs, qss, qd, qdd).cap, 2.0);
  const Vector zero = {0.0, 0.0};
  EXPECT_EQ(kinematic_rows(zero, qss, qd, qdd).cap, kInf);
}

TEST(KinematicRows, RejectsNonPositiveBounds) {
  const Vector qs = {1.0}, qss = {0.0}, good = {1.0}, bad = {0.0};
  EXPECT_THROW(kinematic_rows(qs, qss, good, bad), std::invalid_argument);
  EXPECT_THROW(kinematic_rows(qs, qss, bad, good), std::invalid_argument);
}

TEST(TorqueRows, StaticsWithoutGravity) {
  PlanarArm2Params p;
  p.g0 = 0.0;
  const Vector q = {0.3, -0.4}, zero = {0.0, 0.0};
  const auto rows = torque_rows_planar2(q, zero, zero, p, {-3.0, -2.0}, {5.0, 7.0});
  for (const auto& r : rows) {
    EXPECT_DOUBLE_EQ(r.a, 0.0);
    EXPECT_DOUBLE_EQ(r.b, 0.0);
  }
  EXPECT_DOUBLE_EQ(rows[0].c, -5.0);
  EXPECT_DOUBLE_EQ(rows[1].c, -7.0);
  EXPECT_DOUBLE_EQ(rows[2].c, -3.0);
  EXPECT_DOUBLE_EQ(rows[3].c, -2.0);
}

TEST(TorqueRows, GravityIsPotentialGradient) {
  const PlanarArm2Params p;
  std::mt19937_64 rng(17);
  for (int n = 0; n < 20; ++n) {
    const Vector q = n == 0 ? Vector{0.0, 0.0} : testing::random_point(rng, 2, -M_PI, M_PI);
    const PlanarArm2Dynamics d = planar2_dynamics(q, p);
    for (int i = 0; i < 2; ++i) {
      const double h = 1e-6;
      Vector lo = q, hi = q;
      lo[i] -= h;
      hi[i] += h;
      const double grad = (potential(hi, p) - potential(lo, p)) / (2.0 * h);
      EXPECT_NEAR(d.gravity[i], grad, 1e-6);
    }
  }
}

TEST(TorqueRows, CoefficientsMatchDenseDynamics) {
  PlanarArm2Params p;
  p.m1 = 1.3;
  p.m2 = 0.8;
  p.l1 = 0.9;
  p.lc2 = 0.45;
  p.I1 = 0.02;
  p.I2 = 0.05;
  std::mt19937_64 rng(29);
  const std::array<double, 2> lo = {-20.0, -10.0}, hi = {20.0, 10.0};
  for (int n = 0; n < 50; ++n) {
    const Vector q = testing::random_point(rng, 2, -M_PI, M_PI);
    const Vector qs = testing::random_point(rng, 2, -2.0, 2.0);
    const Vector qss = testing::random_point(rng, 2, -2.0, 2.0);
    const auto rows = torque_rows_planar2(q, qs, qss, p, lo, hi);
    const Mat2 m = dense_mass(q, p);
    const auto cor = christoffel_torque(q, qs, p);
    for (int i = 0; i < 2; ++i) {
      const double a = m[i][0] * qs[0] + m[i][1] * qs[1];
      const double b = m[i][0] * qss[0] + m[i][1] * qss[1] + cor[i];
      EXPECT_NEAR(rows[i].a, a, 1e-10);
      EXPECT_NEAR(rows[i + 2].a, -a, 1e-10);
      EXPECT_NEAR(rows[i].b, b, 1e-7);
      EXPECT_NEAR(rows[i + 2].b, -b, 1e-7);
    }
  }
}

TEST(Discretize, OneDofLineAccelerationOnly) {
  const Path path = testing::line_path(1.0);
  const ConstraintGrid grid = discretize({KinematicLimits{{kInf}, {1.0}}}, path, 10);
  EXPECT_EQ(grid.num_points(), 11u);
  EXPECT_EQ(grid.num_rows(), 2u);
  for (std::size_t i = 0; i < grid.num_points(); ++i) {
    EXPECT_DOUBLE_EQ(grid.row(i, 0).a, 1.0);
    EXPECT_DOUBLE_EQ(grid.row(i, 0).c, -1.0);
    EXPECT_DOUBLE_EQ(grid.row(i, 1).a, -1.0);
    EXPECT_DOUBLE_EQ(grid.row(i, 1).c, -1.0);
  }
  EXPECT_DOUBLE_EQ(grid.s(10), 1.0);
}

TEST(Discretize, RowsConcatenateAcrossAdapters) {
  const Path path = build_path({{-0.2, -1.1}, {-1.7, -0.1}}, PathKind::kCubicSpline);
  PlanarArmTorque torque;
  torque.tau_min = {-20.0, -10.0};
  torque.tau_max = {20.0, 10.0};
  const ConstraintGrid grid =
      discretize({KinematicLimits{{2.0, 2.0}, {5.0, 5.0}}, torque}, path, 16);
  EXPECT_EQ(grid.num_rows(), 8u);
}

TEST(Discretize, SamplesMatchDirectEvaluation) {
  std::mt19937_64 rng(2);
  std::vector<Vector> wp;
  for (int k = 0; k < 4; ++k) wp.push_back(testing::random_point(rng, 2, -1.5, 1.5));
  const Path path = build_path(wp, PathKind::kCubicSpline);
  PlanarArmTorque torque;
  torque.tau_min = {-20.0, -10.0};
  torque.tau_max = {20.0, 10.0};
  const KinematicLimits kin{{2.0, 3.0}, {5.0, 6.0}};
  const ConstraintGrid grid = discretize({kin, torque}, path, 37);
  for (std::size_t i = 0; i < grid.num_points(); ++i) {
    const PathPoint p = path.eval(grid.s(i));
    const KinematicRows kr = kinematic_rows(p.q_s, p.q_ss, kin.qd_max, kin.qdd_max);
    const auto tr =
        torque_rows_planar2(p.q, p.q_s, p.q_ss, torque.params, torque.tau_min, torque.tau_max);
    for (std::size_t k = 0; k < 4; ++k) {
      EXPECT_DOUBLE_EQ(grid.row(i, k).a, kr.rows[k].a);
      EXPECT_DOUBLE_EQ(grid.row(i, k).b, kr.rows[k].b);
      EXPECT_DOUBLE_EQ(grid.row(i, k + 4).a, tr[k].a);
      EXPECT_DOUBLE_EQ(grid.row(i, k + 4).c, tr[k].c);
    }
    EXPECT_DOUBLE_EQ(grid.cap(i), kr.cap);
  }
}

TEST(Discretize, ExplicitRowsPassThrough) {
  ExplicitRows table;
  table.s = {0.0, 0.5, 1.0};
  table.rows = {{{1.0, 0.0, -1.0}, {-1.0, 0.0, -2.0}},
                {{2.0, 0.5, -1.0}, {-1.0, 0.1, -2.0}},
                {{1.0, 0.0, -3.0}, {-2.0, 0.0, -2.0}}};
  const ConstraintGrid grid = discretize({table}, testing::line_path(1.0), 8);
  for (std::size_t j : {0u, 4u, 8u}) {
    for (std::size_t k = 0; k < 2; ++k) {
      const ConstraintRow& want = table.rows[j / 4][k];
      EXPECT_DOUBLE_EQ(grid.row(j, k).a, want.a);
      EXPECT_DOUBLE_EQ(grid.row(j, k).b, want.b);
      EXPECT_DOUBLE_EQ(grid.row(j, k).c, want.c);
    }
  }
  EXPECT_DOUBLE_EQ(grid.row(2, 0).a, 1.5);
}

TEST(Discretize, RejectsBadInput) {
  const Path path = testing::line_path(1.0);
  EXPECT_THROW(discretize({KinematicLimits{{1.0}, {1.0}}}, path, 4), std::invalid_argument);
  EXPECT_THROW(discretize({KinematicLimits{{1.0, 1.0}, {1.0, 1.0}}}, path, 10),
               std::invalid_argument);
  EXPECT_THROW(discretize({PlanarArmTorque{}}, path, 10), std::invalid_argument);
}

TEST(ConstraintGrid, InterpolatesBetweenSamples) {
  const ConstraintGrid grid = testing::make_grid(
      2.0, 2, 1, [](double s) { return std::vector<ConstraintRow>{{s, 2.0 * s, -1.0}}; },
      [](double s) { return 1.0 + s; });
  std::vector<ConstraintRow> rows;
  double cap = 0.0;
  grid.interpolate(0.25, rows, cap);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_DOUBLE_EQ(rows[0].a, 0.25);
  EXPECT_DOUBLE_EQ(rows[0].b, 0.5);
  EXPECT_DOUBLE_EQ(cap, 1.25);
  EXPECT_DOUBLE_EQ(grid.zero_thresholds()[0], 2e-10);
}

}  // namespace
}  // namespace topp
