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

#ifndef TOPP_CONSTRAINTS_HPP_
#define TOPP_CONSTRAINTS_HPP_

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "topp/path.hpp"

namespace topp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// One phase-plane constraint  a * sdd + b * sd^2 + c <= 0.
struct ConstraintRow {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

struct PlanarArm2Params {
  double m1 = 1.0, m2 = 1.0;
  double l1 = 1.0, l2 = 1.0;
  double lc1 = 0.5, lc2 = 0.5;
  double I1 = 0.0, I2 = 0.0;
  double g0 = 9.81;
};

// Closed-form 2-link planar arm dynamics  M(q) qdd + qd^T C(q) qd + g(q) = tau.
// Joint angles are absolute for link 1 and relative for link 2; gravity acts
// along -y.
struct PlanarArm2Dynamics {
  std::array<std::array<double, 2>, 2> mass{};
  // coriolis[i] is the 2x2 quadratic form giving torque i.
  std::array<std::array<std::array<double, 2>, 2>, 2> coriolis{};
  std::array<double, 2> gravity{};
};

PlanarArm2Dynamics planar2_dynamics(std::span<const double> q,
                                    const PlanarArm2Params& params);

// Joint velocity and acceleration bounds, |qd_i| <= qd_max_i and
// |qdd_i| <= qdd_max_i. Adapter name "kinematic".
struct KinematicLimits {
  Vector qd_max;
  Vector qdd_max;
};

// Torque bounds on the 2-link planar arm. Adapter name "planar-arm-torque".
struct PlanarArmTorque {
  PlanarArm2Params params;
  std::array<double, 2> tau_min{};
  std::array<double, 2> tau_max{};
};

// Raw (a, b, c) tables sampled at increasing abscissae s spanning the path,
// linearly interpolated onto the grid. rows[j] holds the rows at s[j]; cap is
// either empty or one direct velocity cap per sample. Adapter name
// "explicit-abc".
struct ExplicitRows {
  Vector s;
  std::vector<std::vector<ConstraintRow>> rows;
  Vector cap;
};

using ConstraintAdapter =
    std::variant<KinematicLimits, PlanarArmTorque, ExplicitRows>;

std::string adapter_name(const ConstraintAdapter& adapter);

// Rows are emitted per dof as (+q_s, +q_ss, -qdd_max) then (-q_s, -q_ss,
// -qdd_max). cap is min_i qd_max_i / |q_s_i|, +inf when q_s vanishes.
struct KinematicRows {
  std::vector<ConstraintRow> rows;
  double cap = kInf;
};
KinematicRows kinematic_rows(std::span<const double> q_s,
                             std::span<const double> q_ss,
                             std::span<const double> qd_max,
                             std::span<const double> qdd_max);

// Rows: upper bounds for joints 1, 2 then lower bounds for joints 1, 2.
std::array<ConstraintRow, 4> torque_rows_planar2(
    std::span<const double> q, std::span<const double> q_s,
    std::span<const double> q_ss, const PlanarArm2Params& params,
    std::array<double, 2> tau_min, std::array<double, 2> tau_max);

// Evaluates all adapter rows and the combined direct cap at an arbitrary s.
using RowEvaluator =
    std::function<void(double s, std::vector<ConstraintRow>& rows, double& cap)>;

// Constraint rows sampled on a uniform grid of N + 1 points over [0, s_end].
//
// Row k keeps its identity across all grid points. Between samples, rows and
// caps are linearly interpolated. When built by discretize(), the grid also
// carries an exact evaluator used where interpolation is too coarse
// (zero-inertia analysis).
class ConstraintGrid {
 public:
  ConstraintGrid(double s_end, std::size_t num_rows,
                 std::vector<ConstraintRow> rows, Vector cap,
                 RowEvaluator evaluator = {});

  std::size_t num_intervals() const { return s_.size() - 1; }
  std::size_t num_points() const { return s_.size(); }
  std::size_t num_rows() const { return num_rows_; }
  double ds() const { return ds_; }
  double s_end() const { return s_.back(); }
  double s(std::size_t i) const { return s_[i]; }
  const Vector& s_grid() const { return s_; }

  std::span<const ConstraintRow> rows(std::size_t i) const {
    return {rows_.data() + i * num_rows_, num_rows_};
  }
  const ConstraintRow& row(std::size_t i, std::size_t k) const {
    return rows_[i * num_rows_ + k];
  }
  double cap(std::size_t i) const { return cap_[i]; }
  const Vector& caps() const { return cap_; }

  // Per-row zero-inertia threshold: 1e-10 * max_i |a_k(s_i)|.
  std::span<const double> zero_thresholds() const { return eps_a_; }

  // Linear interpolation of rows and cap at s.
  void interpolate(double s, std::vector<ConstraintRow>& rows,
                   double& cap) const;
  // Exact evaluation when an evaluator is present, interpolation otherwise.
  void evaluate(double s, std::vector<ConstraintRow>& rows, double& cap) const;
  bool has_evaluator() const { return static_cast<bool>(evaluator_); }

 private:
  Vector s_;
  double ds_;
  std::size_t num_rows_;
  std::vector<ConstraintRow> rows_;
  Vector cap_;
  Vector eps_a_;
  RowEvaluator evaluator_;
};

// Samples every adapter along the path on N + 1 evenly spaced points. Rows are
// concatenated in adapter order; caps are combined by min. Throws
// std::invalid_argument on N < 8, dof mismatch or bad bounds.
ConstraintGrid discretize(const std::vector<ConstraintAdapter>& adapters,
                          const Path& path, std::size_t N);

}  // namespace topp

#endif  // TOPP_CONSTRAINTS_HPP_
