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

#include "topp/limits.hpp"

#include <algorithm>
#include <cmath>

namespace topp {

LimitQuery alpha_beta_u(std::span<const ConstraintRow> rows, double u,
                        std::span<const double> zero_thresholds,
                        int skip_row) {
  LimitQuery out;
  const bool thresholds = !zero_thresholds.empty();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (static_cast<int>(k) == skip_row) continue;
    const ConstraintRow& r = rows[k];
    const double eps = thresholds ? zero_thresholds[k] : 0.0;
    if (std::abs(r.a) <= eps) continue;
    const double bound = (-r.c - r.b * u) / r.a;
    if (r.a > 0.0) {
      if (bound < out.beta) {
        out.beta = bound;
        out.beta_row = static_cast<int>(k);
      }
    } else if (bound > out.alpha) {
      out.alpha = bound;
      out.alpha_row = static_cast<int>(k);
    }
  }
  return out;
}

LimitQuery alpha_beta(std::span<const ConstraintRow> rows, double sd,
                      std::span<const double> zero_thresholds, int skip_row) {
  return alpha_beta_u(rows, sd * sd, zero_thresholds, skip_row);
}

double mvc_at(std::span<const ConstraintRow> rows,
              std::span<const double> zero_thresholds,
              const MvcOptions& options, int skip_row) {
  const bool thresholds = !zero_thresholds.empty();
  auto feasible = [&](double sd) {
    const LimitQuery q = alpha_beta(rows, sd, zero_thresholds, skip_row);
    if (q.alpha > q.beta) return false;
    // A row skipped for vanishing a still bounds the velocity: b sd^2 + c <= 0.
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (static_cast<int>(k) == skip_row) continue;
      const double eps = thresholds ? zero_thresholds[k] : 0.0;
      if (std::abs(rows[k].a) > eps) continue;
      if (rows[k].b * sd * sd + rows[k].c > 0.0) return false;
    }
    return true;
  };
  if (!feasible(0.0)) return 0.0;
  double lo = 0.0;
  double hi = options.bracket_start;
  while (feasible(hi)) {
    lo = hi;
    if (hi >= options.sd_max_search) return options.sd_max_search;
    hi = std::min(2.0 * hi, options.sd_max_search);
  }
  // alpha - beta is convex in u, so the feasible set is one interval [0, mvc].
  while (hi - lo > options.tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

MvcCurves mvc_curves(const ConstraintGrid& grid, const MvcOptions& options) {
  MvcCurves out;
  const std::size_t n = grid.num_points();
  out.mvc.resize(n);
  out.mvc_direct.resize(n);
  out.ceiling.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.mvc[i] = mvc_at(grid.rows(i), grid.zero_thresholds(), options);
    out.mvc_direct[i] = grid.cap(i);
    out.ceiling[i] = std::min(out.mvc[i], out.mvc_direct[i]);
  }
  return out;
}

}  // namespace topp
