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

#ifndef TOPP_ORACLE_HPP_
#define TOPP_ORACLE_HPP_

#include <cstddef>
#include <string>

#include "topp/constraints.hpp"

namespace topp {

struct DpOptions {
  // Velocity levels per grid column, uniform in u = sd^2 on [0, u_max].
  std::size_t nv = 400;
  // Also require each edge to satisfy the rows at both end samples.
  bool strict = false;
};

struct DpResult {
  bool feasible = false;
  double duration = kInf;
  // Optimal sd per grid column; empty when infeasible.
  Vector sd;
  double u_max = 0.0;
  std::string reason;
};

// Minimum-time dynamic programming over the (s, u) lattice formed by the grid
// columns and nv velocity levels. An edge (s_i, u) -> (s_{i+1}, u') has the
// constant acceleration (u' - u) / (2 ds) and costs 2 ds / (sqrt u + sqrt u');
// it is feasible iff every row holds at the midpoint state and both ends
// respect the direct cap. Start and goal are the exact endpoint states.
// u_max is the largest u any profile can reach, found by clamped
// maximal-acceleration sweeps from both ends. Throws std::invalid_argument on
// nv < 16.
DpResult dp_min_time(const ConstraintGrid& grid, double sd_beg, double sd_end,
                     const DpOptions& options = {});

}  // namespace topp

#endif  // TOPP_ORACLE_HPP_
