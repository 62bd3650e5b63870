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

#ifndef TOPP_SWITCHPOINTS_HPP_
#define TOPP_SWITCHPOINTS_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "topp/constraints.hpp"
#include "topp/limits.hpp"

namespace topp {

enum class SwitchKind { kDiscontinuous, kSingular, kTangent };

const char* switch_kind_name(SwitchKind kind);

// Candidate alpha -> beta switch point on the feasibility ceiling. The
// singular fields (row, sd_star, sd_dagger, lambda) are meaningful only for
// kSingular; row is -1 otherwise.
struct SwitchPoint {
  double s_star = 0.0;
  double sd_on_mvc = 0.0;
  SwitchKind kind = SwitchKind::kTangent;
  int row = -1;
  double sd_star = 0.0;
  double sd_dagger = 0.0;
  // Phase-plane slope dsd/ds of the profile through the singular point.
  double lambda = 0.0;
};

// Sign change of a_k between two consecutive grid samples.
struct ZeroInertia {
  std::size_t row = 0;
  double s_star = 0.0;
  // Grid interval [interval, interval + 1] containing s_star.
  std::size_t interval = 0;
  // +1 for a negative -> positive flip, -1 for positive -> negative.
  int direction = 0;
};

// Samples with |a_k| <= zero_threshold_k count as zero; a crossing is a sign
// change between consecutive nonzero samples, located by linear interpolation
// and refined on the exact evaluator when the grid has one.
std::vector<ZeroInertia> find_zero_inertia(const ConstraintGrid& grid);

enum class ZeroInertiaClass {
  kNotSingular,
  kSingular,
  // c_k(s*) > 0: the row cannot be satisfied at s*.
  kInfeasible,
  // b_k and c_k both vanish, or sd_dagger ties sd_star within tolerance.
  kUnresolved,
};

struct ZeroInertiaResult {
  ZeroInertiaClass cls = ZeroInertiaClass::kNotSingular;
  double b = 0.0;
  double c = 0.0;
  double sd_star = 0.0;
  double sd_dagger = 0.0;
  double lambda = 0.0;
};

struct SwitchOptions {
  // Relative jump of the ceiling between adjacent samples treated as a
  // discontinuity.
  double discontinuity_threshold = 0.2;
  // Relative band around sd_star inside which sd_dagger counts as a tie.
  double tie_tolerance = 1e-9;
  MvcOptions mvc;
};

ZeroInertiaResult classify_zero_inertia(const ConstraintGrid& grid,
                                        const ZeroInertia& candidate,
                                        const SwitchOptions& options = {});

// lambda = -(b'_k sd*^2 + c'_k) / ((2 b_k + a'_k) sd*), derivatives by
// symmetric differences over one grid interval. Throws std::domain_error on a
// vanishing denominator.
double singular_slope(const ConstraintGrid& grid, std::size_t k, double s_star,
                      double sd_star);
// Same formula on explicit values and derivatives.
double singular_slope(double b, double a_prime, double b_prime, double c_prime,
                      double sd_star);

struct SwitchPointReport {
  // Sorted by s_star, at most one per grid cell.
  std::vector<SwitchPoint> points;
  std::vector<ZeroInertia> infeasible;
  std::vector<ZeroInertia> unresolved;
  std::vector<std::string> log;

  std::size_t singular_count() const;
};

SwitchPointReport find_switch_points(const ConstraintGrid& grid,
                                     const MvcCurves& curves,
                                     const SwitchOptions& options = {});

}  // namespace topp

#endif  // TOPP_SWITCHPOINTS_HPP_
