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

#ifndef TOPP_RETIMING_HPP_
#define TOPP_RETIMING_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "topp/constraints.hpp"
#include "topp/path.hpp"
#include "topp/profile.hpp"

namespace topp {

// Total time under the constant-acceleration-per-segment model,
// dt_i = 2 ds_i / (sd_i + sd_{i+1}). Throws std::domain_error when an interior
// sd vanishes or a segment has zero speed at both ends.
double profile_duration(const Profile& profile);

// Per-sample times, t[0] = 0.
Vector profile_times(const Profile& profile);

struct Trajectory {
  Vector t;
  std::vector<Vector> q;
  std::vector<Vector> qd;
  std::vector<Vector> qdd;
  Vector s;
  Vector sd;
  Vector sdd;
};

// Samples at t = 0, dt, 2 dt, ... and always at the final time. s(t) inverts
// the constant acceleration of the containing segment; qd = q_s sd and
// qdd = q_s sdd + q_ss sd^2. Throws std::invalid_argument on dt <= 0.
Trajectory retime(const Path& path, const Profile& profile, double dt);

struct RowViolation {
  std::size_t row = 0;
  double residual = -kInf;
  double s = 0.0;
  std::size_t index = 0;
};

struct ValidationReport {
  bool pass = true;
  double tolerance = 0.0;
  // max over checked states and rows of a sdd + b sd^2 + c.
  double max_residual = -kInf;
  // Largest residual divided by the row's coefficient scale.
  double max_scaled_residual = -kInf;
  // Largest excess of sd over the ceiling; -inf when no ceiling was given.
  double max_ceiling_excess = -kInf;
  std::vector<RowViolation> worst_per_row;
  std::string summary() const;
};

struct ValidateOptions {
  // Residual tolerance. When scaled, row k passes iff residual_k <= tol *
  // scale_k, with scale_k = max |a_k|, |b_k|, |c_k| over the grid.
  double tolerance = 1e-6;
  bool scaled = true;
  // Optional sd ceiling per grid point; sd must stay <= ceiling + tolerance.
  const Vector* ceiling = nullptr;
};

// Each segment is checked at its anchor grid point with that point's rows
// (left anchor when the profile carries none). The profile must lie on the
// grid's abscissae.
ValidationReport validate(const Profile& profile, const ConstraintGrid& grid,
                          const ValidateOptions& options = {});
// Each trajectory sample is checked against rows interpolated at its s.
ValidationReport validate(const Trajectory& trajectory,
                          const ConstraintGrid& grid,
                          const ValidateOptions& options = {});

}  // namespace topp

#endif  // TOPP_RETIMING_HPP_
