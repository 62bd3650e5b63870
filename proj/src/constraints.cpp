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

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace topp {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void append_adapter_rows(const ConstraintAdapter& adapter, const Path& path,
                         double s, const PathPoint& point,
                         std::vector<ConstraintRow>& rows, double& cap) {
  std::visit(
      Overloaded{
          [&](const KinematicLimits& lim) {
            KinematicRows kr =
                kinematic_rows(point.q_s, point.q_ss, lim.qd_max, lim.qdd_max);
            rows.insert(rows.end(), kr.rows.begin(), kr.rows.end());
            cap = std::min(cap, kr.cap);
          },
          [&](const PlanarArmTorque& t) {
            auto tr = torque_rows_planar2(point.q, point.q_s, point.q_ss,
                                          t.params, t.tau_min, t.tau_max);
            rows.insert(rows.end(), tr.begin(), tr.end());
          },
          [&](const ExplicitRows& table) {
            const Vector& xs = table.s;
            const double sc = std::clamp(s, xs.front(), xs.back());
            std::size_t j = static_cast<std::size_t>(
                std::upper_bound(xs.begin(), xs.end(), sc) - xs.begin());
            j = std::clamp<std::size_t>(j, 1, xs.size() - 1) - 1;
            const double w = (sc - xs[j]) / (xs[j + 1] - xs[j]);
            for (std::size_t k = 0; k < table.rows[j].size(); ++k) {
              const ConstraintRow& r0 = table.rows[j][k];
              const ConstraintRow& r1 = table.rows[j + 1][k];
              rows.push_back({r0.a + w * (r1.a - r0.a), r0.b + w * (r1.b - r0.b),
                              r0.c + w * (r1.c - r0.c)});
            }
            if (!table.cap.empty()) {
              cap = std::min(cap, table.cap[j] + w * (table.cap[j + 1] - table.cap[j]));
            }
          }},
      adapter);
  (void)path;
}

void validate_adapter(const ConstraintAdapter& adapter, const Path& path) {
  std::visit(
      Overloaded{
          [&](const KinematicLimits& lim) {
            if (lim.qd_max.size() != path.dof() || lim.qdd_max.size() != path.dof()) {
              throw std::invalid_argument("kinematic: bound size does not match path dof");
            }
            for (std::size_t i = 0; i < path.dof(); ++i) {
              if (!(lim.qd_max[i] > 0.0)) {
                throw std::invalid_argument("kinematic: qd_max[" + std::to_string(i) +
                                            "] must be positive");
              }
              if (!(lim.qdd_max[i] > 0.0)) {
                throw std::invalid_argument("kinematic: qdd_max[" + std::to_string(i) +
                                            "] must be positive");
              }
            }
          },
          [&](const PlanarArmTorque& t) {
            if (path.dof() != 2) {
              throw std::invalid_argument("planar-arm-torque: path must have 2 dof");
            }
            for (int i = 0; i < 2; ++i) {
              if (!(t.tau_min[i] < t.tau_max[i])) {
                throw std::invalid_argument("planar-arm-torque: tau_min must be < tau_max");
              }
            }
            const auto& p = t.params;
            if (p.m1 < 0 || p.m2 < 0 || p.l1 < 0 || p.l2 < 0) {
              throw std::invalid_argument("planar-arm-torque: masses and lengths must be >= 0");
            }
          },
          [&](const ExplicitRows& table) {
            if (table.s.size() < 2 || table.rows.size() != table.s.size()) {
              throw std::invalid_argument("explicit-abc: need >= 2 samples with one row set each");
            }
            for (std::size_t j = 1; j < table.s.size(); ++j) {
              if (!(table.s[j] > table.s[j - 1])) {
                throw std::invalid_argument("explicit-abc: s must be increasing");
              }
              if (table.rows[j].size() != table.rows[0].size()) {
                throw std::invalid_argument("explicit-abc: row count must be constant");
              }
            }
            if (!table.cap.empty() && table.cap.size() != table.s.size()) {
              throw std::invalid_argument("explicit-abc: cap needs one value per sample");
            }
            for (double c : table.cap) {
              if (!(c >= 0.0)) throw std::invalid_argument("explicit-abc: caps must be >= 0");
            }
          }},
      adapter);
}

// Speed bound implied by a row with a = 0:  b sd^2 + c <= 0.
double velocity_row_bound(const ConstraintRow& r) {
  if (r.b > 0.0) return r.c >= 0.0 ? 0.0 : std::sqrt(-r.c / r.b);
  if (r.c > 0.0 && r.b == 0.0) return 0.0;
  return kInf;
}

}  // namespace

std::string adapter_name(const ConstraintAdapter& adapter) {
  return std::visit(Overloaded{[](const KinematicLimits&) { return std::string("kinematic"); },
                               [](const PlanarArmTorque&) { return std::string("planar-arm-torque"); },
                               [](const ExplicitRows&) { return std::string("explicit-abc"); }},
                    adapter);
}

PlanarArm2Dynamics planar2_dynamics(std::span<const double> q,
                                    const PlanarArm2Params& p) {
  PlanarArm2Dynamics d;
  const double c2 = std::cos(q[1]);
  const double s2 = std::sin(q[1]);
  const double m22 = p.m2 * p.lc2 * p.lc2 + p.I2;
  const double m12 = m22 + p.m2 * p.l1 * p.lc2 * c2;
  const double m11 = p.m1 * p.lc1 * p.lc1 + p.I1 +
                     p.m2 * (p.l1 * p.l1 + 2.0 * p.l1 * p.lc2 * c2) + m22;
  d.mass = {{{m11, m12}, {m12, m22}}};
  const double h = -p.m2 * p.l1 * p.lc2 * s2;
  // tau_1 = h (2 qd1 qd2 + qd2^2), tau_2 = -h qd1^2.
  d.coriolis[0] = {{{0.0, h}, {h, h}}};
  d.coriolis[1] = {{{-h, 0.0}, {0.0, 0.0}}};
  const double c1 = std::cos(q[0]);
  const double c12 = std::cos(q[0] + q[1]);
  d.gravity = {(p.m1 * p.lc1 + p.m2 * p.l1) * p.g0 * c1 + p.m2 * p.lc2 * p.g0 * c12,
               p.m2 * p.lc2 * p.g0 * c12};
  return d;
}

KinematicRows kinematic_rows(std::span<const double> q_s,
                             std::span<const double> q_ss,
                             std::span<const double> qd_max,
                             std::span<const double> qdd_max) {
  KinematicRows out;
  out.rows.reserve(2 * q_s.size());
  for (std::size_t i = 0; i < q_s.size(); ++i) {
    if (!(qd_max[i] > 0.0) || !(qdd_max[i] > 0.0)) {
      throw std::invalid_argument("kinematic bounds must be strictly positive");
    }
  }
  for (std::size_t i = 0; i < q_s.size(); ++i) {
    out.rows.push_back({q_s[i], q_ss[i], -qdd_max[i]});
    out.rows.push_back({-q_s[i], -q_ss[i], -qdd_max[i]});
    if (q_s[i] != 0.0) out.cap = std::min(out.cap, qd_max[i] / std::abs(q_s[i]));
  }
  return out;
}

std::array<ConstraintRow, 4> torque_rows_planar2(
    std::span<const double> q, std::span<const double> q_s,
    std::span<const double> q_ss, const PlanarArm2Params& params,
    std::array<double, 2> tau_min, std::array<double, 2> tau_max) {
  const PlanarArm2Dynamics dyn = planar2_dynamics(q, params);
  std::array<ConstraintRow, 4> rows;
  for (int i = 0; i < 2; ++i) {
    const double a = dyn.mass[i][0] * q_s[0] + dyn.mass[i][1] * q_s[1];
    double quad = 0.0;
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) quad += q_s[j] * dyn.coriolis[i][j][k] * q_s[k];
    }
    const double b = dyn.mass[i][0] * q_ss[0] + dyn.mass[i][1] * q_ss[1] + quad;
    rows[i] = {a, b, dyn.gravity[i] - tau_max[i]};
    rows[i + 2] = {-a, -b, -dyn.gravity[i] + tau_min[i]};
  }
  return rows;
}

ConstraintGrid::ConstraintGrid(double s_end, std::size_t num_rows,
                               std::vector<ConstraintRow> rows, Vector cap,
                               RowEvaluator evaluator)
    : num_rows_(num_rows),
      rows_(std::move(rows)),
      cap_(std::move(cap)),
      evaluator_(std::move(evaluator)) {
  if (!(s_end > 0.0)) throw std::invalid_argument("grid needs s_end > 0");
  if (cap_.size() < 2) throw std::invalid_argument("grid needs >= 2 points");
  if (rows_.size() != cap_.size() * num_rows_) {
    throw std::invalid_argument("grid rows must be (N+1) * M");
  }
  const std::size_t n = cap_.size() - 1;
  ds_ = s_end / static_cast<double>(n);
  s_.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) s_[i] = ds_ * static_cast<double>(i);
  s_.back() = s_end;
  for (const auto& r : rows_) {
    if (!std::isfinite(r.a) || !std::isfinite(r.b) || !std::isfinite(r.c)) {
      throw std::invalid_argument("constraint rows must be finite");
    }
  }
  eps_a_.assign(num_rows_, 0.0);
  for (std::size_t i = 0; i <= n; ++i) {
    if (!(cap_[i] >= 0.0)) throw std::invalid_argument("direct caps must be >= 0");
    for (std::size_t k = 0; k < num_rows_; ++k) {
      eps_a_[k] = std::max(eps_a_[k], std::abs(row(i, k).a));
    }
  }
  // Rows with a identically zero are first-order velocity constraints; fold
  // them into the direct cap so the phase-plane fields can skip them.
  for (std::size_t k = 0; k < num_rows_; ++k) {
    if (eps_a_[k] > 0.0) continue;
    for (std::size_t i = 0; i <= n; ++i) {
      cap_[i] = std::min(cap_[i], velocity_row_bound(row(i, k)));
    }
  }
  for (double& e : eps_a_) e *= 1e-10;
}

void ConstraintGrid::interpolate(double s, std::vector<ConstraintRow>& rows,
                                 double& cap) const {
  const double x = std::clamp(s / ds_, 0.0, static_cast<double>(num_intervals()));
  std::size_t i = std::min(static_cast<std::size_t>(x), num_intervals() - 1);
  const double w = x - static_cast<double>(i);
  rows.resize(num_rows_);
  for (std::size_t k = 0; k < num_rows_; ++k) {
    const ConstraintRow& r0 = row(i, k);
    const ConstraintRow& r1 = row(i + 1, k);
    rows[k] = {r0.a + w * (r1.a - r0.a), r0.b + w * (r1.b - r0.b),
               r0.c + w * (r1.c - r0.c)};
  }
  const double c0 = cap_[i], c1 = cap_[i + 1];
  if (std::isinf(c0) || std::isinf(c1)) {
    cap = w < 0.5 ? c0 : c1;
    if (std::isinf(c0) && std::isinf(c1)) cap = kInf;
  } else {
    cap = c0 + w * (c1 - c0);
  }
}

void ConstraintGrid::evaluate(double s, std::vector<ConstraintRow>& rows,
                              double& cap) const {
  if (!evaluator_) {
    interpolate(s, rows, cap);
    return;
  }
  rows.clear();
  cap = kInf;
  evaluator_(std::clamp(s, 0.0, s_end()), rows, cap);
  for (std::size_t k = 0; k < num_rows_ && k < rows.size(); ++k) {
    if (eps_a_[k] == 0.0) cap = std::min(cap, velocity_row_bound(rows[k]));
  }
}

ConstraintGrid discretize(const std::vector<ConstraintAdapter>& adapters,
                          const Path& path, std::size_t N) {
  if (N < 8) throw std::invalid_argument("grid size N must be >= 8");
  for (const auto& adapter : adapters) validate_adapter(adapter, path);

  auto shared_path = std::make_shared<const Path>(path);
  auto shared_adapters = std::make_shared<const std::vector<ConstraintAdapter>>(adapters);
  RowEvaluator evaluator = [shared_path, shared_adapters](
                               double s, std::vector<ConstraintRow>& rows, double& cap) {
    PathPoint point;
    shared_path->eval(s, point);
    for (const auto& adapter : *shared_adapters) {
      append_adapter_rows(adapter, *shared_path, s, point, rows, cap);
    }
  };

  std::vector<ConstraintRow> all_rows;
  Vector caps(N + 1, kInf);
  std::vector<ConstraintRow> point_rows;
  std::size_t num_rows = 0;
  const double ds = path.s_end() / static_cast<double>(N);
  for (std::size_t i = 0; i <= N; ++i) {
    const double s = i == N ? path.s_end() : ds * static_cast<double>(i);
    point_rows.clear();
    evaluator(s, point_rows, caps[i]);
    if (i == 0) {
      num_rows = point_rows.size();
      all_rows.reserve((N + 1) * num_rows);
    }
    all_rows.insert(all_rows.end(), point_rows.begin(), point_rows.end());
  }
  return ConstraintGrid(path.s_end(), num_rows, std::move(all_rows),
                        std::move(caps), std::move(evaluator));
}

}  // namespace topp
