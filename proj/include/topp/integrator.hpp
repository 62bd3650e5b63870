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

#ifndef TOPP_INTEGRATOR_HPP_
#define TOPP_INTEGRATOR_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "topp/constraints.hpp"
#include "topp/limits.hpp"
#include "topp/path.hpp"
#include "topp/profile.hpp"
#include "topp/switchpoints.hpp"

namespace topp {

enum class Termination {
  kReachedEnd,
  kReachedStart,
  kHitMvc,
  kHitDirectCap,
  kHitZero,
  kIntersected,
};

const char* termination_name(Termination t);

// Field followed by integrate_forward / integrate_backward: beta forward and
// alpha backward, or a constant acceleration.
struct Field {
  bool constant = false;
  double accel = 0.0;
};

struct IntegrationResult {
  // Samples from the start index to the last valid index, ascending in s.
  Profile profile;
  Termination termination = Termination::kReachedEnd;
  // Grid index of the last valid sample.
  std::size_t index = 0;
  // For kIntersected: grid index of the junction on the target profile.
  std::size_t intersection = 0;
};

// Steps u = sd^2 over the grid from sample `start`: u_{i+1} = u_i + 2 ds
// sdd_i with sdd_i taken at the left sample. Slides along the direct cap when
// it is reached and can be followed. Throws std::invalid_argument when the
// start lies above the ceiling.
IntegrationResult integrate_forward(const ConstraintGrid& grid,
                                    const MvcCurves& curves, std::size_t start,
                                    double sd, const Field& field = {});

// Mirror of integrate_forward, sdd taken at the right sample. With a target
// profile on the full grid, stops at the first junction where the target can
// be joined by one feasible segment.
IntegrationResult integrate_backward(const ConstraintGrid& grid,
                                     const MvcCurves& curves, std::size_t start,
                                     double sd, const Field& field = {},
                                     const Profile* target = nullptr);

// Follows the direct cap from sample `from` while the required acceleration
// lies in [alpha, beta]. Terminates with kHitDirectCap when the cap drops
// faster than alpha allows, kReachedEnd at s_end, kIntersected when beta can
// no longer keep up (the profile leaves the cap downward) or the cap stops
// binding.
IntegrationResult slide_direct_cap(const ConstraintGrid& grid,
                                   const MvcCurves& curves, std::size_t from);

struct SolverOptions {
  MvcOptions mvc;
  SwitchOptions switches;
  // Constant-field steps on each side of a singular switch point; 0 selects
  // max(5, ceil(N / 100)).
  std::size_t n_escape = 0;
  // Start singular switch points with min(alpha-, alpha+, alpha_MVC) and
  // clamp to the ceiling nearby instead of the constant-field escape.
  bool legacy_singularity = false;
  std::size_t max_profiles_factor = 64;
  // Largest relative lowering of a start on the ceiling: near a detected
  // switch point and elsewhere on the grid scan.
  double switch_lowering = 1e-2;
  double scan_lowering = 1e-4;
  // Largest relative lowering of a singular start before it is rejected.
  double singular_lowering = 5e-2;
  // Last-resort lowering when no switch point passes.
  double coarse_lowering = 5e-2;
};

enum class SolveStatus { kSuccess, kInfeasible, kFailure };

const char* status_name(SolveStatus status);

struct ParameterizationResult {
  SolveStatus status = SolveStatus::kFailure;
  std::string reason;
  // Path position of an infeasibility, when known; -1 otherwise.
  double fail_s = -1.0;
  Profile profile;
  double duration = 0.0;
  MvcCurves curves;
  SwitchPointReport switch_points;
  // Switch points actually used to start profiles, in order.
  std::vector<SwitchPoint> switch_log;
  std::vector<std::string> log;
  std::size_t profiles = 0;

  bool ok() const { return status == SolveStatus::kSuccess; }
};

// Three-step driver on a discretized problem. sd_beg and sd_end are path
// velocities at s = 0 and s = s_end.
ParameterizationResult solve_topp(const ConstraintGrid& grid, double sd_beg,
                                  double sd_end,
                                  const SolverOptions& options = {});

// Discretizes the adapters on N intervals and converts the linear endpoint
// speeds with sd = v / |q_s|.
ParameterizationResult solve_topp(const Path& path,
                                  const std::vector<ConstraintAdapter>& adapters,
                                  double v_beg, double v_end, std::size_t N,
                                  const SolverOptions& options = {});

}  // namespace topp

#endif  // TOPP_INTEGRATOR_HPP_
