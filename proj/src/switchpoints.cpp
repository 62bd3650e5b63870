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

#include "topp/switchpoints.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace topp {
namespace {

int sign_of(double a, double eps) {
  if (a > eps) return 1;
  if (a < -eps) return -1;
  return 0;
}

double row_a(const ConstraintGrid& grid, std::size_t k, double s,
             std::vector<ConstraintRow>& rows) {
  double cap = kInf;
  grid.evaluate(s, rows, cap);
  return rows[k].a;
}

double row_scale(const ConstraintGrid& grid, std::size_t k) {
  double scale = 0.0;
  for (std::size_t i = 0; i < grid.num_points(); ++i) {
    const ConstraintRow& r = grid.row(i, k);
    scale = std::max({scale, std::abs(r.a), std::abs(r.b), std::abs(r.c)});
  }
  return scale;
}

int priority(SwitchKind kind) {
  switch (kind) {
    case SwitchKind::kSingular: return 2;
    case SwitchKind::kDiscontinuous: return 1;
    case SwitchKind::kTangent: return 0;
  }
  return 0;
}

// d(s) = alpha(s, MVC(s)) - MVC'(s) MVC(s); NaN where the MVC is not the
// binding ceiling or alpha is unbounded.
class TangencyFunction {
 public:
  TangencyFunction(const ConstraintGrid& grid, const MvcOptions& options)
      : grid_(grid), options_(options) {}

  double operator()(double s) {
    const double h = 0.25 * grid_.ds();
    const double lo = std::max(0.0, s - h);
    const double hi = std::min(grid_.s_end(), s + h);
    double cap = kInf;
    const double m = mvc(s, cap);
    if (!(m > 0.0) || m >= options_.sd_max_search || m > cap) return std::nan("");
    double cap_lo = kInf, cap_hi = kInf;
    const double slope = (mvc(hi, cap_hi) - mvc(lo, cap_lo)) / (hi - lo);
    grid_.evaluate(s, rows_, cap);
    const LimitQuery q = alpha_beta(rows_, m, grid_.zero_thresholds());
    if (!std::isfinite(q.alpha)) return std::nan("");
    return q.alpha - slope * m;
  }

 private:
  double mvc(double s, double& cap) {
    grid_.evaluate(s, rows_, cap);
    return mvc_at(rows_, grid_.zero_thresholds(), options_);
  }

  const ConstraintGrid& grid_;
  MvcOptions options_;
  std::vector<ConstraintRow> rows_;
};

}  // namespace

const char* switch_kind_name(SwitchKind kind) {
  switch (kind) {
    case SwitchKind::kDiscontinuous: return "discontinuous";
    case SwitchKind::kSingular: return "singular";
    case SwitchKind::kTangent: return "tangent";
  }
  return "unknown";
}

std::size_t SwitchPointReport::singular_count() const {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [](const SwitchPoint& p) {
        return p.kind == SwitchKind::kSingular;
      }));
}

std::vector<ZeroInertia> find_zero_inertia(const ConstraintGrid& grid) {
  std::vector<ZeroInertia> out;
  std::vector<ConstraintRow> rows;
  const auto eps = grid.zero_thresholds();
  const std::size_t n = grid.num_points();
  for (std::size_t k = 0; k < grid.num_rows(); ++k) {
    if (eps[k] == 0.0) continue;
    int last_sign = 0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = grid.row(i, k).a;
      const int sg = sign_of(a, eps[k]);
      if (sg == 0) continue;
      if (last_sign != 0 && sg != last_sign) {
        const double a0 = grid.row(last, k).a;
        double lo = grid.s(last);
        double hi = grid.s(i);
        double s = lo + (hi - lo) * a0 / (a0 - a);
        if (grid.has_evaluator()) {
          // a_k keeps the sign last_sign on [lo, root).
          for (int it = 0; it < 100 && hi - lo > 1e-15 * grid.s_end(); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (sign_of(row_a(grid, k, mid, rows), 0.0) == last_sign) {
              lo = mid;
            } else {
              hi = mid;
            }
          }
          s = 0.5 * (lo + hi);
        }
        ZeroInertia z;
        z.row = k;
        z.s_star = s;
        z.interval = std::min(static_cast<std::size_t>(s / grid.ds()),
                              grid.num_intervals() - 1);
        z.direction = sg;
        out.push_back(z);
      }
      last_sign = sg;
      last = i;
    }
  }
  std::sort(out.begin(), out.end(), [](const ZeroInertia& x, const ZeroInertia& y) {
    return x.s_star < y.s_star || (x.s_star == y.s_star && x.row < y.row);
  });
  return out;
}

double singular_slope(double b, double a_prime, double b_prime, double c_prime,
                      double sd_star) {
  const double den = (2.0 * b + a_prime) * sd_star;
  const double num = b_prime * sd_star * sd_star + c_prime;
  if (!(std::abs(den) > 1e-12 * std::max(1.0, std::abs(num)))) {
    throw std::domain_error("singular slope: vanishing denominator");
  }
  return -num / den;
}

double singular_slope(const ConstraintGrid& grid, std::size_t k, double s_star,
                      double sd_star) {
  const double lo = std::max(0.0, s_star - grid.ds());
  const double hi = std::min(grid.s_end(), s_star + grid.ds());
  std::vector<ConstraintRow> rows;
  double cap = kInf;
  grid.evaluate(lo, rows, cap);
  const ConstraintRow r_lo = rows[k];
  grid.evaluate(hi, rows, cap);
  const ConstraintRow r_hi = rows[k];
  grid.evaluate(s_star, rows, cap);
  const ConstraintRow r0 = rows[k];
  const double w = hi - lo;
  return singular_slope(r0.b, (r_hi.a - r_lo.a) / w, (r_hi.b - r_lo.b) / w,
                        (r_hi.c - r_lo.c) / w, sd_star);
}

ZeroInertiaResult classify_zero_inertia(const ConstraintGrid& grid,
                                        const ZeroInertia& z,
                                        const SwitchOptions& options) {
  ZeroInertiaResult out;
  std::vector<ConstraintRow> rows;
  double cap = kInf;
  grid.evaluate(z.s_star, rows, cap);
  const ConstraintRow& r = rows[z.row];
  out.b = r.b;
  out.c = r.c;
  const double tol = 1e-9 * row_scale(grid, z.row);
  if (std::abs(r.b) <= tol && std::abs(r.c) <= tol) {
    out.cls = ZeroInertiaClass::kUnresolved;
    return out;
  }
  if (r.c > tol) {
    out.cls = ZeroInertiaClass::kInfeasible;
    return out;
  }
  if (r.b <= tol) {
    out.cls = ZeroInertiaClass::kNotSingular;
    return out;
  }
  out.sd_star = std::sqrt(std::max(0.0, -r.c) / r.b);
  out.sd_dagger = std::min(
      mvc_at(rows, grid.zero_thresholds(), options.mvc, static_cast<int>(z.row)),
      cap);
  if (out.sd_dagger > out.sd_star * (1.0 + options.tie_tolerance)) {
    try {
      out.lambda = singular_slope(grid, z.row, z.s_star, out.sd_star);
      out.cls = ZeroInertiaClass::kSingular;
    } catch (const std::domain_error&) {
      out.cls = ZeroInertiaClass::kUnresolved;
    }
  } else if (out.sd_dagger < out.sd_star * (1.0 - options.tie_tolerance)) {
    out.cls = ZeroInertiaClass::kNotSingular;
  } else {
    out.cls = ZeroInertiaClass::kUnresolved;
  }
  return out;
}

SwitchPointReport find_switch_points(const ConstraintGrid& grid,
                                     const MvcCurves& curves,
                                     const SwitchOptions& options) {
  SwitchPointReport report;
  std::vector<SwitchPoint> found;
  const std::size_t n = grid.num_points();
  const Vector& ceil = curves.ceiling;
  const double ds = grid.ds();

  std::vector<bool> jump(grid.num_intervals(), false);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double hi = std::max(ceil[i], ceil[i + 1]);
    const double lo = std::min(ceil[i], ceil[i + 1]);
    if (!(hi > 0.0) || hi - lo <= options.discontinuity_threshold * hi) continue;
    jump[i] = true;
    SwitchPoint p;
    p.kind = SwitchKind::kDiscontinuous;
    const std::size_t j = ceil[i + 1] < ceil[i] ? i + 1 : i;
    p.s_star = grid.s(j);
    p.sd_on_mvc = ceil[j];
    found.push_back(p);
  }

  TangencyFunction d(grid, options.mvc);
  auto binding = [&](std::size_t i) {
    return curves.mvc[i] <= curves.mvc_direct[i] && curves.mvc[i] > 0.0 &&
           curves.mvc[i] < options.mvc.sd_max_search;
  };
  std::vector<ConstraintRow> rows;
  Vector dval(n, std::nan(""));
  for (std::size_t i = 0; i < n; ++i) {
    if (!binding(i)) continue;
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = std::min(i + 1, n - 1);
    const double slope = (curves.mvc[hi] - curves.mvc[lo]) / (grid.s(hi) - grid.s(lo));
    const LimitQuery q = alpha_beta(grid.rows(i), curves.mvc[i], grid.zero_thresholds());
    if (std::isfinite(q.alpha)) dval[i] = q.alpha - slope * curves.mvc[i];
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (jump[i] || !(dval[i] > 0.0) || !(dval[i + 1] <= 0.0)) continue;
    double lo = grid.s(i), hi = grid.s(i + 1);
    for (int it = 0; it < 40 && hi - lo > 1e-12 * grid.s_end(); ++it) {
      const double mid = 0.5 * (lo + hi);
      const double v = d(mid);
      if (std::isnan(v)) break;
      if (v > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    SwitchPoint p;
    p.kind = SwitchKind::kTangent;
    p.s_star = 0.5 * (lo + hi);
    double cap = kInf;
    grid.evaluate(p.s_star, rows, cap);
    p.sd_on_mvc = std::min(mvc_at(rows, grid.zero_thresholds(), options.mvc), cap);
    found.push_back(p);
  }

  for (const ZeroInertia& z : find_zero_inertia(grid)) {
    const ZeroInertiaResult r = classify_zero_inertia(grid, z, options);
    std::ostringstream msg;
    msg << "zero-inertia row " << z.row << " at s=" << z.s_star << ": ";
    switch (r.cls) {
      case ZeroInertiaClass::kSingular: {
        SwitchPoint p;
        p.kind = SwitchKind::kSingular;
        p.s_star = z.s_star;
        p.sd_on_mvc = r.sd_star;
        p.row = static_cast<int>(z.row);
        p.sd_star = r.sd_star;
        p.sd_dagger = r.sd_dagger;
        p.lambda = r.lambda;
        found.push_back(p);
        msg << "singular, sd*=" << r.sd_star << " sd+=" << r.sd_dagger
            << " lambda=" << r.lambda;
        break;
      }
      case ZeroInertiaClass::kInfeasible:
        report.infeasible.push_back(z);
        msg << "infeasible, c=" << r.c;
        break;
      case ZeroInertiaClass::kUnresolved:
        report.unresolved.push_back(z);
        msg << "unresolved, b=" << r.b << " c=" << r.c << " sd*=" << r.sd_star
            << " sd+=" << r.sd_dagger;
        break;
      case ZeroInertiaClass::kNotSingular:
        msg << "not singular";
        break;
    }
    report.log.push_back(msg.str());
  }

  std::stable_sort(found.begin(), found.end(),
                   [](const SwitchPoint& x, const SwitchPoint& y) {
                     return x.s_star < y.s_star;
                   });
  // One switch point per grid cell: singular over discontinuous over tangent,
  // the lower singular velocity among singular points, leftmost otherwise.
  for (const SwitchPoint& p : found) {
    if (!report.points.empty() && p.s_star - report.points.back().s_star < ds) {
      SwitchPoint& prev = report.points.back();
      const bool lower_singular = p.kind == SwitchKind::kSingular &&
                                  prev.kind == SwitchKind::kSingular &&
                                  p.sd_star < prev.sd_star;
      if (priority(p.kind) > priority(prev.kind) || lower_singular) {
        report.log.push_back(std::string("merged ") + switch_kind_name(prev.kind) +
                             " into " + switch_kind_name(p.kind));
        prev = p;
      }
      continue;
    }
    report.points.push_back(p);
  }
  return report;
}

}  // namespace topp
