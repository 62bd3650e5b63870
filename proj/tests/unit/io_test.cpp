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

#include "topp/io.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gtest/gtest.h"
#include "support.hpp"
#include "topp/integrator.hpp"
#include "topp/limits.hpp"
#include "topp/oracle.hpp"
#include "topp/retiming.hpp"

namespace topp {
namespace {

ParameterizationResult solved(const Path& path, std::size_t N, ConstraintGrid* grid_out = nullptr) {
  const ConstraintGrid grid = discretize({KinematicLimits{{1.0, 1.0}, {2.0, 3.0}}}, path, N);
  if (grid_out != nullptr) *grid_out = grid;
  return solve_topp(grid, 0.0, 0.0);
}

Path test_path() {
  return build_path({{0.0, 0.0}, {1.0, 0.5}, {0.2, 1.4}}, PathKind::kCubicSpline);
}

TEST(ProfileCsv, RoundTripsExactly) {
  const ParameterizationResult r = solved(test_path(), 200);
  ASSERT_TRUE(r.ok());
  std::stringstream buf;
  write_profile_csv(buf, r.profile);
  const Profile back = read_profile_csv(buf);
  ASSERT_EQ(back.size(), r.profile.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back.s[i], r.profile.s[i]);
    EXPECT_EQ(back.sd[i], r.profile.sd[i]);
    EXPECT_EQ(back.sdd[i], r.profile.sdd[i]);
  }
  EXPECT_EQ(back.kind, r.profile.kind);
  EXPECT_EQ(back.anchor, r.profile.anchor);
}

TEST(ProfileCsv, KindColumnsAreOptional) {
  std::istringstream in("s,sd,sdd\n0,0,1\n0.5,1,1\n1,1.4142135623730951,1\n");
  const Profile p = read_profile_csv(in);
  EXPECT_EQ(p.size(), 3u);
  EXPECT_TRUE(p.kind.empty());
}

TEST(ProfileCsv, RejectsMalformedInput) {
  std::istringstream non_monotone("s,sd,sdd\n0,0,1\n0,1,1\n");
  EXPECT_THROW(read_profile_csv(non_monotone), std::invalid_argument);
  std::istringstream missing("s,sd\n0,0\n");
  EXPECT_THROW(read_profile_csv(missing), std::out_of_range);
  std::istringstream bad_number("s,sd,sdd\n0,x,1\n");
  EXPECT_THROW(read_profile_csv(bad_number), std::invalid_argument);
  std::istringstream empty("");
  EXPECT_THROW(read_csv(empty), std::invalid_argument);
}

TEST(TrajectoryCsv, RoundTrips) {
  const Path path = test_path();
  const ParameterizationResult r = solved(path, 100);
  ASSERT_TRUE(r.ok());
  const Trajectory tr = retime(path, r.profile, 0.05);
  std::stringstream buf;
  write_trajectory_csv(buf, tr);
  const CsvTable t = read_csv(buf);
  ASSERT_EQ(t.rows.size(), tr.t.size());
  EXPECT_EQ(t.header.size(), 1u + 3u * 2u + 3u);
  const Vector time = t.numbers("t");
  const Vector qd1 = t.numbers("qd1");
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    EXPECT_EQ(time[i], tr.t[i]);
    EXPECT_EQ(qd1[i], tr.qd[i][1]);
  }
}

TEST(OtherCsv, ParseWithExpectedColumns) {
  ConstraintGrid grid = testing::accel_grid(1.0, 8, 1.0);
  const ParameterizationResult r = solved(test_path(), 100, &grid);
  ASSERT_TRUE(r.ok());
  {
    std::stringstream buf;
    write_switch_csv(buf, r.switch_points.points);
    const CsvTable t = read_csv(buf);
    EXPECT_EQ(t.rows.size(), r.switch_points.points.size());
    EXPECT_NO_THROW(t.column("lambda"));
    EXPECT_NO_THROW(t.numbers("s"));
  }
  {
    std::stringstream buf;
    write_mvc_csv(buf, grid.s_grid(), r.curves);
    const CsvTable t = read_csv(buf);
    const Vector mvc = t.numbers("mvc_direct");
    ASSERT_EQ(mvc.size(), grid.num_points());
    for (std::size_t i = 0; i < mvc.size(); ++i) EXPECT_EQ(mvc[i], r.curves.mvc_direct[i]);
  }
  {
    std::stringstream buf;
    const DpResult dp = dp_min_time(grid, 0.0, 0.0, {64, false});
    write_dp_csv(buf, grid.s_grid(), dp);
    EXPECT_EQ(read_csv(buf).numbers("sd").size(), grid.num_points());
  }
  {
    std::stringstream buf;
    write_residual_csv(buf, validate(r.profile, grid));
    EXPECT_EQ(read_csv(buf).numbers("worst_residual").size(), grid.num_rows());
  }
}

}  // namespace
}  // namespace topp
