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

#include "topp/retiming.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace topp {
namespace {

Vector row_scales(const ConstraintGrid& grid) {
  Vector scale(grid.num_rows(), 0.0);
  for (std::size_t i = 0; i < grid.num_points(); ++i) {
    for (std::size_t k = 0; k < grid.num_rows(); ++k) {
      const ConstraintRow& r = grid.row(i, k);
      scale[k] = std::max({scale[k], std::abs(r.a), std::abs(r.b), std::abs(r.c)});
    }
  }
  return scale;
}

class Checker {
 public:
  Checker(const ConstraintGrid& grid, const ValidateOptions& options)
      : options_(options), scale_(row_scales(grid)) {
    report_.tolerance = options.tolerance;
    report_.worst_per_row.resize(grid.num_rows());
    for (std::size_t k = 0; k < grid.num_rows(); ++k) report_.worst_per_row[k].row = k;
  }

  void check(std::span<const ConstraintRow> rows, double s, std::size_t index,
             double sd, double sdd) {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const ConstraintRow& r = rows[k];
      const double res = r.a * sdd + r.b * sd * sd + r.c;
      const double scaled = scale_[k] > 0.0 ? res / scale_[k] : res;
      RowViolation& w = report_.worst_per_row[k];
      if (res > w.residual) w = {k, res, s, index};
      report_.max_residual = std::max(report_.max_residual, res);
      report_.max_scaled_residual = std::max(report_.max_scaled_residual, scaled);
      const double limit =
          options_.tolerance * (options_.scaled && scale_[k] > 0.0 ? scale_[k] : 1.0);
      if (res > limit) report_.pass = false;
    }
  }

  void check_ceiling(double sd, double ceiling) {
    const double excess = sd - ceiling;
    report_.max_ceiling_excess = std::max(report_.max_ceiling_excess, excess);
    if (excess > options_.tolerance * std::max(1.0, ceiling)) report_.pass = false;
  }

  ValidationReport finish() { return std::move(report_); }

 private:
  const ValidateOptions& options_;
  Vector scale_;
  ValidationReport report_;
};

}  // namespace

const char* segment_kind_name(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::kBeta: return "beta";
    case SegmentKind::kAlpha: return "alpha";
    case SegmentKind::kSlide: return "slide";
    case SegmentKind::kEscape: return "escape";
    case SegmentKind::kConnect: return "connect";
    case SegmentKind::kLegacy: return "legacy";
  }
  return "unknown";
}

Vector profile_times(const Profile& profile) {
  const std::size_t n = profile.size();
  if (n < 2) throw std::invalid_argument("profile needs >= 2 samples");
  Vector t(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (i > 0 && !(profile.sd[i] > 0.0)) {
      throw std::domain_error("zero velocity inside the path: infinite duration");
    }
    const double v = profile.sd[i] + profile.sd[i + 1];
    if (!(v > 0.0)) throw std::domain_error("segment with zero velocity at both ends");
    t[i + 1] = t[i] + 2.0 * (profile.s[i + 1] - profile.s[i]) / v;
  }
  return t;
}

double profile_duration(const Profile& profile) { return profile_times(profile).back(); }

Trajectory retime(const Path& path, const Profile& profile, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  const Vector times = profile_times(profile);
  const double T = times.back();
  Trajectory out;
  const auto steps = static_cast<std::size_t>(std::floor(T / dt));
  for (std::size_t k = 0; k <= steps; ++k) out.t.push_back(static_cast<double>(k) * dt);
  if (T - out.t.back() > 1e-12 * std::max(1.0, T)) {
    out.t.push_back(T);
  } else {
    out.t.back() = T;
  }
  PathPoint p;
  std::size_t seg = 0;
  const std::size_t last_seg = profile.size() - 2;
  for (double t : out.t) {
    while (seg < last_seg && t > times[seg + 1]) ++seg;
    const double s0 = profile.s[seg];
    const double s1 = profile.s[seg + 1];
    const double v0 = profile.sd[seg];
    const double v1 = profile.sd[seg + 1];
    // Constant acceleration implied by the endpoint velocities.
    const double x = (v1 * v1 - v0 * v0) / (2.0 * (s1 - s0));
    const double tau = std::clamp(t - times[seg], 0.0, times[seg + 1] - times[seg]);
    const double s = std::clamp(s0 + v0 * tau + 0.5 * x * tau * tau, s0, s1);
    const double sd = std::max(0.0, v0 + x * tau);
    path.eval(s, p);
    Vector qd(p.q.size()), qdd(p.q.size());
    for (std::size_t j = 0; j < p.q.size(); ++j) {
      qd[j] = p.q_s[j] * sd;
      qdd[j] = p.q_s[j] * x + p.q_ss[j] * sd * sd;
    }
    out.q.push_back(p.q);
    out.qd.push_back(std::move(qd));
    out.qdd.push_back(std::move(qdd));
    out.s.push_back(s);
    out.sd.push_back(sd);
    out.sdd.push_back(x);
  }
  return out;
}

ValidationReport validate(const Profile& profile, const ConstraintGrid& grid,
                          const ValidateOptions& options) {
  Checker checker(grid, options);
  const bool on_grid = profile.size() == grid.num_points();
  std::vector<ConstraintRow> rows;
  double cap = kInf;
  for (std::size_t i = 0; i + 1 < profile.size(); ++i) {
    const bool right = i < profile.anchor.size() && profile.anchor[i] == Anchor::kRight;
    const std::size_t p = right ? i + 1 : i;
    if (on_grid) {
      checker.check(grid.rows(p), profile.s[p], p, profile.sd[p], profile.sdd[i]);
    } else {
      grid.interpolate(profile.s[p], rows, cap);
      checker.check(rows, profile.s[p], p, profile.sd[p], profile.sdd[i]);
    }
  }
  if (options.ceiling != nullptr) {
    const Vector& c = *options.ceiling;
    if (c.size() != profile.size()) {
      throw std::invalid_argument("ceiling must have one value per profile sample");
    }
    for (std::size_t i = 0; i < profile.size(); ++i) checker.check_ceiling(profile.sd[i], c[i]);
  }
  return checker.finish();
}

ValidationReport validate(const Trajectory& trajectory,
                          const ConstraintGrid& grid,
                          const ValidateOptions& options) {
  Checker checker(grid, options);
  std::vector<ConstraintRow> rows;
  double cap = kInf;
  for (std::size_t i = 0; i < trajectory.t.size(); ++i) {
    grid.interpolate(trajectory.s[i], rows, cap);
    checker.check(rows, trajectory.s[i], i, trajectory.sd[i], trajectory.sdd[i]);
  }
  return checker.finish();
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  os << (pass ? "pass" : "fail") << " tolerance=" << tolerance
     << " max_residual=" << max_residual << " max_scaled_residual=" << max_scaled_residual;
  if (max_ceiling_excess > -kInf) os << " max_ceiling_excess=" << max_ceiling_excess;
  os << "\n";
  for (const RowViolation& w : worst_per_row) {
    os << "row " << w.row << " worst=" << w.residual << " at s=" << w.s
       << " index=" << w.index << "\n";
  }
  return os.str();
}

}  // namespace topp
