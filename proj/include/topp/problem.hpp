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

#ifndef TOPP_PROBLEM_HPP_
#define TOPP_PROBLEM_HPP_

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "topp/constraints.hpp"
#include "topp/integrator.hpp"
#include "topp/path.hpp"

namespace topp {

inline constexpr int kProblemVersion = 1;

// Geometric path description. kind is one of "cubic-spline", "bezier",
// "bezier-controls", "blended" or "pieces".
struct PathSpec {
  std::string kind = "cubic-spline";
  std::vector<Vector> waypoints;
  double max_deviation = 0.1;
  std::array<Vector, 4> control_points;
  Vector knots;
  std::vector<Path::Piece> pieces;
};

struct Problem {
  PathSpec path;
  std::vector<ConstraintAdapter> constraints;
  // Linear speeds |qd| at the path ends.
  double v_beg = 0.0;
  double v_end = 0.0;
  std::size_t N = 200;
  SolverOptions solver;
};

// Malformed or semantically invalid problem text. field() is the JSON path of
// the offending value (e.g. "constraints[0].qdd_max[1]") or "line N" for
// syntax errors.
class ProblemError : public std::runtime_error {
 public:
  ProblemError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

Problem parse_problem(const std::string& text);
// Throws ProblemError with field "file" when the file cannot be read.
Problem load_problem(const std::string& filename);
// Normalized JSON with every default filled in; parse_problem round-trips it.
std::string dump_problem(const Problem& problem);

Path build_problem_path(const Problem& problem);
ConstraintGrid discretize_problem(const Problem& problem);
// Endpoint path velocities sd = v / |q_s| at s = 0 and s = s_end.
std::array<double, 2> endpoint_sd(const Problem& problem, const Path& path);
ParameterizationResult solve_problem(const Problem& problem);

}  // namespace topp

#endif  // TOPP_PROBLEM_HPP_
