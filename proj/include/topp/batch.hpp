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

#ifndef TOPP_BATCH_HPP_
#define TOPP_BATCH_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "topp/integrator.hpp"
#include "topp/problem.hpp"

namespace topp {

struct BatchOptions {
  std::size_t instances = 100;
  std::size_t dof = 7;
  std::uint64_t seed = 42;
  std::size_t N = 200;
  double qd_max = 4.0;
  double qdd_max = 20.0;
  std::size_t threads = 1;
  // Validate each successful profile at this scaled tolerance.
  double validate_tolerance = 1e-6;
  SolverOptions solver;
};

// Instance `index` of a batch: one cubic Bezier whose four control points are
// uniform in [-pi, pi]^dof, under symmetric velocity and acceleration bounds,
// rest to rest. Depends only on (seed, index).
Problem make_batch_instance(const BatchOptions& options, std::size_t index);

struct BatchInstance {
  std::size_t index = 0;
  SolveStatus status = SolveStatus::kFailure;
  std::string reason;
  double duration = 0.0;
  double solve_seconds = 0.0;
  std::size_t singular = 0;
  bool valid = false;
  double max_scaled_residual = 0.0;
};

struct BatchSummary {
  std::vector<BatchInstance> instances;
  std::size_t successes = 0;
  std::size_t infeasible = 0;
  std::size_t failures = 0;
  std::size_t singular_total = 0;
  std::size_t invalid = 0;
  double mean_seconds = 0.0;
  double median_seconds = 0.0;

  // Counts and durations only; identical for identical options.
  std::string deterministic_text() const;
  // deterministic_text() plus timing lines.
  std::string text() const;
};

BatchSummary run_batch(const BatchOptions& options);

}  // namespace topp

#endif  // TOPP_BATCH_HPP_
