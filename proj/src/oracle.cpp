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

#include "topp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace topp {
namespace {

// Feasible u' interval of the constraint p u' + q <= 0, intersected into
// [lo, hi].
void restrict(double p, double q, double& lo, double& hi) {
  if (p > 0.0) {
    hi = std::min(hi, -q / p);
  } else if (p < 0.0) {
    lo = std::max(lo, -q / p);
  } else if (q > 0.0) {
    lo = kInf;
  }
}

double cap_u(double cap) { return std::isfinite(cap) ? cap * cap : kInf; }

// Rows of one edge i -> i+1 as affine constraints  pu * u + pv * u' + q <= 0.
struct EdgeRow {
  double pu, pv, q;
};

void edge_rows(const ConstraintGrid& grid, std::size_t i, bool strict,
               std::vector<EdgeRow>& out) {
  out.clear();
  const double h = 1.0 / (2.0 * grid.ds());
  const auto r0 = grid.rows(i);
  const auto r1 = grid.rows(i + 1);
  for (std::size_t k = 0; k < r0.size(); ++k) {
    // Midpoint: a (u' - u) / 2ds + b (u + u') / 2 + c <= 0.
    const double a = 0.5 * (r0[k].a + r1[k].a);
    const double b = 0.5 * (r0[k].b + r1[k].b);
    const double c = 0.5 * (r0[k].c + r1[k].c);
    out.push_back({-a * h + 0.5 * b, a * h + 0.5 * b, c});
    if (strict) {
      out.push_back({-r0[k].a * h + r0[k].b, r0[k].a * h, r0[k].c});
      out.push_back({-r1[k].a * h, r1[k].a * h + r1[k].b, r1[k].c});
    }
  }
}

// Interval of u' reachable from u, intersected into [lo, hi].
void successors(const std::vector<EdgeRow>& rows, double u, double& lo, double& hi) {
  for (const EdgeRow& r : rows) {
    restrict(r.pv, r.pu * u + r.q, lo, hi);
    if (lo > hi) return;
  }
}

// Interval of u from which u' is reachable, intersected into [lo, hi].
void predecessors(const std::vector<EdgeRow>& rows, double v, double& lo, double& hi) {
  for (const EdgeRow& r : rows) {
    restrict(r.pu, r.pv * v + r.q, lo, hi);
    if (lo > hi) return;
  }
}

// Largest x in [0, top] with ok(x), assuming ok(0) when any x is ok.
template <class Ok>
double largest_ok(double top, const Ok& ok) {
  if (ok(top)) return top;
  if (!ok(0.0)) return -1.0;
  double lo = 0.0, hi = top;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

DpResult dp_min_time(const ConstraintGrid& grid, double sd_beg, double sd_end,
                     const DpOptions& options) {
  if (options.nv < 16) throw std::invalid_argument("dp oracle needs nv >= 16");
  DpResult out;
  const std::size_t n = grid.num_intervals();
  const std::size_t nv = options.nv;
  const double two_ds = 2.0 * grid.ds();
  const double u_beg = sd_beg * sd_beg;
  const double u_end = sd_end * sd_end;
  if (u_beg > cap_u(grid.cap(0)) || u_end > cap_u(grid.cap(n))) {
    out.reason = "endpoint above the direct cap";
    return out;
  }
  std::vector<std::vector<EdgeRow>> edges(n);
  for (std::size_t i = 0; i < n; ++i) edge_rows(grid, i, options.strict, edges[i]);

  // Per-column velocity ceiling: the highest state any edge sequence can hold
  // from the start (fwd) and towards the goal (bwd).
  Vector fwd(n + 1), bwd(n + 1);
  fwd[0] = u_beg;
  for (std::size_t i = 0; i < n; ++i) {
    const auto reach = [&](double u) {
      double lo = 0.0, hi = cap_u(grid.cap(i + 1));
      successors(edges[i], u, lo, hi);
      return lo <= hi;
    };
    const double u = largest_ok(fwd[i], reach);
    if (u < 0.0) {
      out.reason = "forward sweep blocked at s=" + std::to_string(grid.s(i));
      return out;
    }
    double lo = 0.0, hi = cap_u(grid.cap(i + 1));
    successors(edges[i], u, lo, hi);
    fwd[i + 1] = hi;
  }
  bwd[n] = u_end;
  for (std::size_t i = n; i > 0; --i) {
    const auto reach = [&](double v) {
      double lo = 0.0, hi = cap_u(grid.cap(i - 1));
      predecessors(edges[i - 1], v, lo, hi);
      return lo <= hi;
    };
    const double v = largest_ok(bwd[i], reach);
    if (v < 0.0) {
      out.reason = "backward sweep blocked at s=" + std::to_string(grid.s(i));
      return out;
    }
    double lo = 0.0, hi = cap_u(grid.cap(i - 1));
    predecessors(edges[i - 1], v, lo, hi);
    bwd[i - 1] = hi;
  }
  Vector top(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    top[i] = std::min(fwd[i], bwd[i]);
    if (!std::isfinite(top[i])) {
      out.reason = "no bounded velocity range";
      return out;
    }
    out.u_max = std::max(out.u_max, top[i]);
  }
  if (u_beg > top[0] || u_end > top[n]) {
    out.reason = "endpoints not connected";
    return out;
  }

  // Column i holds nv levels uniform on [0, top_i], except the exact start
  // and goal states.
  const double steps = static_cast<double>(nv - 1);
  auto width = [&](std::size_t i) { return (i == 0 || i == n) ? std::size_t{1} : nv; };
  auto level = [&](std::size_t i, std::size_t l) {
    if (i == 0) return u_beg;
    if (i == n) return u_end;
    return top[i] * static_cast<double>(l) / steps;
  };

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  Vector next(nv, kInf), cur(nv, kInf);
  std::vector<std::size_t> choice((n + 1) * nv, kNone);
  next[0] = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    const std::size_t w1 = width(i + 1);
    const double du1 = top[i + 1] / steps;
    const double slack = 1e-12 * std::max(1.0, out.u_max);
    std::fill(cur.begin(), cur.end(), kInf);
    for (std::size_t l = 0; l < width(i); ++l) {
      const double u = level(i, l);
      double lo = 0.0, hi = cap_u(grid.cap(i + 1));
      successors(edges[i], u, lo, hi);
      if (lo > hi + slack || !std::isfinite(lo)) continue;
      // Feasible successors form a contiguous run of levels.
      std::size_t m_lo = 0, m_hi = w1 - 1;
      if (w1 > 1) {
        if (!(du1 > 0.0)) {
          m_hi = 0;
        } else {
          m_lo = static_cast<std::size_t>(std::max(0.0, std::ceil((lo - slack) / du1)));
          m_hi = static_cast<std::size_t>(
              std::min(static_cast<double>(w1 - 1), std::floor((hi + slack) / du1)));
        }
      }
      const double su = std::sqrt(u);
      double best = kInf;
      std::size_t arg = kNone;
      for (std::size_t m = m_lo; m <= m_hi && m < w1; ++m) {
        const double v = level(i + 1, m);
        if (v < lo - slack || v > hi + slack || !std::isfinite(next[m])) continue;
        const double sv = su + std::sqrt(v);
        if (!(sv > 0.0)) continue;
        const double c = two_ds / sv + next[m];
        if (c < best) {
          best = c;
          arg = m;
        }
      }
      cur[l] = best;
      choice[i * nv + l] = arg;
    }
    std::swap(cur, next);
  }
  if (!std::isfinite(next[0])) {
    out.reason = "no feasible transition sequence";
    return out;
  }
  out.feasible = true;
  out.duration = next[0];
  std::size_t l = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    out.sd.push_back(std::sqrt(level(i, l)));
    if (i < n) l = choice[i * nv + l];
  }
  return out;
}

}  // namespace topp
