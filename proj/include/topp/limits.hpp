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

#ifndef TOPP_LIMITS_HPP_
#define TOPP_LIMITS_HPP_

#include <cstddef>
#include <span>

#include "topp/constraints.hpp"

namespace topp {

// Feasible path-acceleration interval [alpha, beta] at one state. An empty
// side is reported as -inf / +inf with row index -1.
struct LimitQuery {
  double alpha = -kInf;
  double beta = kInf;
  int alpha_row = -1;
  int beta_row = -1;
};

// Rows with |a_k| <= zero_thresholds[k] are skipped (zero-inertia rows). An
// empty threshold span means exact-zero skipping only. skip_row removes one
// row from consideration.
LimitQuery alpha_beta(std::span<const ConstraintRow> rows, double sd,
                      std::span<const double> zero_thresholds = {},
                      int skip_row = -1);
// Same, parameterized by u = sd^2.
LimitQuery alpha_beta_u(std::span<const ConstraintRow> rows, double u,
                        std::span<const double> zero_thresholds = {},
                        int skip_row = -1);

struct MvcOptions {
  // Soft ceiling returned when alpha never meets beta.
  double sd_max_search = 1e4;
  // Absolute bisection tolerance on sd.
  double tolerance = 1e-8;
  // First bracket probe; doubled until the crossing is bracketed.
  double bracket_start = 1e-3;
};

// Smallest sd >= 0 with alpha(sd) = beta(sd); 0 when alpha(0) > beta(0);
// sd_max_search when the fields never meet. Rows skipped for vanishing a act
// as velocity bounds b sd^2 + c <= 0. The returned value is the feasible end
// of the final bisection bracket.
double mvc_at(std::span<const ConstraintRow> rows,
              std::span<const double> zero_thresholds = {},
              const MvcOptions& options = {}, int skip_row = -1);

struct MvcCurves {
  Vector mvc;
  Vector mvc_direct;
  // Pointwise min of the two: the feasibility ceiling for every profile.
  Vector ceiling;
};

MvcCurves mvc_curves(const ConstraintGrid& grid, const MvcOptions& options = {});

}  // namespace topp

#endif  // TOPP_LIMITS_HPP_
