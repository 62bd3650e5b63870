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

#include "topp/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "topp/retiming.hpp"

namespace topp {
namespace {

constexpr double kRel = 1e-12;

bool leq(double a, double b) {
  if (a <= b) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  return a <= b + kRel * std::max({1.0, std::abs(a), std::abs(b)});
}

// Squared ceilings and row access on one grid.
class PhasePlane {
 public:
  PhasePlane(const ConstraintGrid& grid, const MvcCurves& curves)
      : grid(grid), n(grid.num_intervals()), ds(grid.ds()) {
    U.resize(n + 1);
    Umvc.resize(n + 1);
    Ucap.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      Umvc[i] = curves.mvc[i] * curves.mvc[i];
      const double cap = curves.mvc_direct[i];
      Ucap[i] = std::isfinite(cap) ? cap * cap : kInf;
      U[i] = std::min(Umvc[i], Ucap[i]);
    }
  }

  LimitQuery limits(std::size_t i, double u) const {
    return alpha_beta_u(grid.rows(i), u, grid.zero_thresholds());
  }
  bool cap_binding(std::size_t i) const { return Ucap[i] <= Umvc[i]; }
  bool on_cap(std::size_t i, double u) const {
    return cap_binding(i) && std::isfinite(Ucap[i]) && u >= Ucap[i] * (1.0 - kRel);
  }
  bool above(std::size_t i, double u) const { return u > U[i] * (1.0 + kRel); }

  const ConstraintGrid& grid;
  std::size_t n;
  double ds;
  Vector U;
  Vector Umvc;
  Vector Ucap;
};

// u on every grid point, one acceleration per segment.
struct Track {
  explicit Track(std::size_t n)
      : u(n + 1, std::nan("")), x(n, 0.0), kind(n, SegmentKind::kBeta),
        anchor(n, Anchor::kLeft) {}

  void set(std::size_t seg, double accel, SegmentKind k, Anchor a) {
    x[seg] = accel;
    kind[seg] = k;
    anchor[seg] = a;
  }

  Vector u;
  Vector x;
  std::vector<SegmentKind> kind;
  std::vector<Anchor> anchor;
};

// Leading steps taken with a fixed acceleration before the alpha/beta field,
// then an optional window in which ceiling crossings are clamped.
struct Lead {
  std::size_t steps = 0;
  double accel = 0.0;
  SegmentKind kind = SegmentKind::kEscape;
  Anchor anchor = Anchor::kLeft;
  std::size_t clamp_steps = 0;
};

enum class Stop { kEnd, kMvc, kCapDrop, kZero, kConnected, kForced, kStart, kOffCap };

struct StepResult {
  Stop stop;
  // Forward: last valid sample. Backward: last valid sample, or the junction
  // sample on the target for kConnected / kForced.
  std::size_t index;
};

StepResult forward(const PhasePlane& pp, Track& t, std::size_t i, Lead lead,
                   bool slide_only = false) {
  const double two_ds = 2.0 * pp.ds;
  while (i < pp.n) {
    const double u = t.u[i];
    if (lead.steps > 0) {
      --lead.steps;
      double un = u + two_ds * lead.accel;
      if (un < 0.0) return {Stop::kZero, i};
      if (pp.above(i + 1, un)) {
        if (lead.clamp_steps == 0) return {Stop::kMvc, i};
        un = pp.U[i + 1];
      }
      t.u[i + 1] = un;
      t.set(i, (un - u) / two_ds, lead.kind, lead.anchor);
      ++i;
      continue;
    }
    const LimitQuery q = pp.limits(i, u);
    if (pp.on_cap(i, u)) {
      const double cap1 = pp.Ucap[i + 1];
      if (std::isfinite(cap1) && pp.cap_binding(i + 1)) {
        const double xr = (cap1 - u) / two_ds;
        if (leq(q.alpha, xr) && leq(xr, q.beta)) {
          t.u[i + 1] = cap1;
          t.set(i, xr, SegmentKind::kSlide, Anchor::kLeft);
          ++i;
          continue;
        }
        if (xr < q.alpha) return {Stop::kCapDrop, i};
      }
      if (slide_only) return {Stop::kOffCap, i};
    } else if (slide_only) {
      return {Stop::kOffCap, i};
    }
    double un = std::isfinite(q.beta) ? u + two_ds * q.beta : kInf;
    if (pp.above(i + 1, un)) {
      if (lead.clamp_steps > 0) {
        --lead.clamp_steps;
        un = pp.U[i + 1];
        t.u[i + 1] = un;
        t.set(i, (un - u) / two_ds, SegmentKind::kLegacy, Anchor::kLeft);
        ++i;
        continue;
      }
      // Land on the ceiling when the required acceleration is feasible.
      const double xe = (pp.U[i + 1] - u) / two_ds;
      if (leq(q.alpha, xe)) {
        t.u[i + 1] = pp.U[i + 1];
        t.set(i, xe, SegmentKind::kSlide, Anchor::kLeft);
        ++i;
        continue;
      }
      return {Stop::kMvc, i};
    }
    if (un < 0.0) return {Stop::kZero, i};
    if (lead.clamp_steps > 0) --lead.clamp_steps;
    t.u[i + 1] = un;
    t.set(i, q.beta, SegmentKind::kBeta, Anchor::kLeft);
    ++i;
  }
  return {Stop::kEnd, pp.n};
}

// Integrates backward from sample j. When env is given, every step first
// tests whether env[m-1] joins t[m] through one feasible segment; env is
// defined on [0, env_hi].
StepResult backward(const PhasePlane& pp, Track& t, std::size_t j, Lead lead,
                    const Track* env, std::size_t env_hi,
                    bool slide_only = false) {
  const double two_ds = 2.0 * pp.ds;
  std::size_t m = j;
  while (m > 0) {
    const double u = t.u[m];
    if (env != nullptr && m - 1 <= env_hi) {
      const double e = env->u[m - 1];
      const double x = (u - e) / two_ds;
      const LimitQuery qe = pp.limits(m - 1, e);
      if (leq(qe.alpha, x) && leq(x, qe.beta)) {
        t.set(m - 1, x, SegmentKind::kConnect, Anchor::kLeft);
        return {Stop::kConnected, m - 1};
      }
      const LimitQuery qu = pp.limits(m, u);
      if (leq(qu.alpha, x) && leq(x, qu.beta)) {
        t.set(m - 1, x, SegmentKind::kConnect, Anchor::kRight);
        return {Stop::kConnected, m - 1};
      }
      if (m <= env_hi && u > env->u[m] * (1.0 + kRel)) {
        t.set(m - 1, x, SegmentKind::kConnect, Anchor::kLeft);
        return {Stop::kForced, m - 1};
      }
    }
    if (lead.steps > 0) {
      --lead.steps;
      double un = u - two_ds * lead.accel;
      if (un < 0.0) return {Stop::kZero, m};
      if (pp.above(m - 1, un)) {
        if (lead.clamp_steps == 0) return {Stop::kMvc, m};
        un = pp.U[m - 1];
      }
      t.u[m - 1] = un;
      t.set(m - 1, (u - un) / two_ds, lead.kind, lead.anchor);
      --m;
      continue;
    }
    const LimitQuery q = pp.limits(m, u);
    if (pp.on_cap(m, u)) {
      const double cap0 = pp.Ucap[m - 1];
      if (std::isfinite(cap0) && pp.cap_binding(m - 1)) {
        const double xr = (u - cap0) / two_ds;
        if (leq(q.alpha, xr) && leq(xr, q.beta)) {
          t.u[m - 1] = cap0;
          t.set(m - 1, xr, SegmentKind::kSlide, Anchor::kRight);
          --m;
          continue;
        }
        if (xr > q.beta) return {Stop::kCapDrop, m};
      }
      if (slide_only) return {Stop::kOffCap, m};
    } else if (slide_only) {
      return {Stop::kOffCap, m};
    }
    double un = std::isfinite(q.alpha) ? u - two_ds * q.alpha : kInf;
    if (pp.above(m - 1, un)) {
      if (lead.clamp_steps > 0) {
        --lead.clamp_steps;
        un = pp.U[m - 1];
        t.u[m - 1] = un;
        t.set(m - 1, (u - un) / two_ds, SegmentKind::kLegacy, Anchor::kRight);
        --m;
        continue;
      }
      const double xe = (u - pp.U[m - 1]) / two_ds;
      if (leq(xe, q.beta)) {
        t.u[m - 1] = pp.U[m - 1];
        t.set(m - 1, xe, SegmentKind::kSlide, Anchor::kRight);
        --m;
        continue;
      }
      return {Stop::kMvc, m};
    }
    if (un < 0.0) return {Stop::kZero, m};
    if (lead.clamp_steps > 0) --lead.clamp_steps;
    t.u[m - 1] = un;
    t.set(m - 1, q.alpha, SegmentKind::kAlpha, Anchor::kRight);
    --m;
  }
  return {Stop::kStart, 0};
}

Profile make_profile(const ConstraintGrid& grid, const Track& t, std::size_t lo,
                     std::size_t hi) {
  Profile p;
  for (std::size_t i = lo; i <= hi; ++i) {
    p.s.push_back(grid.s(i));
    p.sd.push_back(std::sqrt(std::max(0.0, t.u[i])));
    if (i < hi) {
      p.sdd.push_back(t.x[i]);
      p.kind.push_back(t.kind[i]);
      p.anchor.push_back(t.anchor[i]);
    }
  }
  p.sdd.push_back(p.sdd.empty() ? 0.0 : p.sdd.back());
  return p;
}

Termination to_termination(Stop stop, bool forward_dir) {
  switch (stop) {
    case Stop::kEnd: return Termination::kReachedEnd;
    case Stop::kStart: return Termination::kReachedStart;
    case Stop::kMvc: return Termination::kHitMvc;
    case Stop::kCapDrop: return Termination::kHitDirectCap;
    case Stop::kZero: return Termination::kHitZero;
    case Stop::kConnected:
    case Stop::kForced:
    case Stop::kOffCap: return Termination::kIntersected;
  }
  return forward_dir ? Termination::kReachedEnd : Termination::kReachedStart;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

class SolveFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Driver {
 public:
  Driver(const ConstraintGrid& grid, double sd_beg, double sd_end,
         const SolverOptions& options)
      : grid_(grid), options_(options), sd_beg_(sd_beg), sd_end_(sd_end),
        env_(grid.num_intervals()), scratch_(grid.num_intervals()) {}

  ParameterizationResult run();

 private:
  bool search(std::size_t h, bool coarse);
  StepResult final_backward(double u_end);
  bool try_start(std::size_t j, double rel, double& u0) const;
  bool pass(std::size_t j, double u) const;
  bool try_singular(const SwitchPoint& sp);
  bool try_legacy(const SwitchPoint& sp);
  // Escape from u0 at s_star is feasible with at least `need` constant-field
  // steps per side (fewer where the grid ends); n_l, n_r get the lead lengths.
  bool escape_ok(double u0, std::size_t L, std::size_t need, double s_star, double xc,
                 std::size_t& n_l, std::size_t& n_r) const;
  void commit(std::size_t junction, std::size_t j);
  void count_profile();
  // Opens the cells around a rejected singular point to the generic search.
  void release_singular(std::size_t L);
  std::size_t cell(double s) const {
    return std::min(static_cast<std::size_t>(s / grid_.ds()), grid_.num_intervals() - 1);
  }

  const ConstraintGrid& grid_;
  const SolverOptions& options_;
  double sd_beg_;
  double sd_end_;
  ParameterizationResult result_;
  std::optional<PhasePlane> pp_;
  Track env_;
  Track scratch_;
  std::size_t frontier_ = 0;
  std::size_t min_next_ = 1;
  std::size_t n_esc_ = 5;
  std::size_t max_profiles_ = 64;
  Lead next_lead_;
  std::vector<bool> singular_tried_;
  std::vector<bool> near_switch_;
  std::vector<bool> near_singular_;
};

void Driver::release_singular(std::size_t L) {
  for (std::size_t i = L == 0 ? 0 : L - 1; i <= std::min(L + 2, pp_->n); ++i) {
    near_singular_[i] = false;
    near_switch_[i] = true;
  }
}

void Driver::count_profile() {
  if (++result_.profiles > max_profiles_) {
    throw SolveFailure("profile limit " + std::to_string(max_profiles_) + " exceeded");
  }
}

void Driver::commit(std::size_t junction, std::size_t j) {
  count_profile();
  for (std::size_t i = junction; i < j; ++i) {
    env_.set(i, scratch_.x[i], scratch_.kind[i], scratch_.anchor[i]);
    env_.u[i + 1] = scratch_.u[i + 1];
  }
}

bool Driver::pass(std::size_t j, double u) const {
  const PhasePlane& pp = *pp_;
  const double two_ds = 2.0 * pp.ds;
  if (!(u >= 0.0) || j == 0) return false;
  const LimitQuery q = pp.limits(j, u);
  if (q.alpha > q.beta) return false;
  const double ub = std::isfinite(q.alpha) ? u - two_ds * q.alpha : kInf;
  const bool back_ok = (!pp.above(j - 1, ub) && ub >= 0.0) ||
                       leq((u - pp.U[j - 1]) / two_ds, q.beta);
  if (!back_ok) return false;
  if (j == pp.n) return true;
  const double uf = std::isfinite(q.beta) ? u + two_ds * q.beta : kInf;
  return !pp.above(j + 1, uf) ||
         leq(q.alpha, (pp.U[j + 1] - u) / two_ds);
}

bool Driver::try_start(std::size_t j, double rel, double& u0) const {
  double hi = pp_->U[j];
  if (!(hi > 0.0)) return false;
  if (pass(j, hi)) {
    u0 = hi;
    return true;
  }
  double lo = hi * (1.0 - rel);
  if (!pass(j, lo)) return false;
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (pass(j, mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  u0 = lo;
  return true;
}

bool Driver::escape_ok(double u0, std::size_t L, std::size_t need, double s_star,
                       double xc, std::size_t& n_l, std::size_t& n_r) const {
  const PhasePlane& pp = *pp_;
  const double two_ds = 2.0 * pp.ds;
  auto rows_ok = [&](std::size_t i, double u) {
    if (!(u >= 0.0) || pp.above(i, u)) return false;
    for (const ConstraintRow& r : grid_.rows(i)) {
      if (r.a * xc + r.b * u + r.c > 0.0) return false;
    }
    return true;
  };
  const std::size_t R = L + 1;
  const double u_l = u0 - 2.0 * (s_star - grid_.s(L)) * xc;
  const double u_r = u0 + 2.0 * (grid_.s(R) - s_star) * xc;
  if (!rows_ok(L, u_l)) return false;
  if (!(u_r >= 0.0) || pp.above(R, u_r)) return false;
  // Each side keeps the constant field while it stays feasible.
  const std::size_t max_l = std::min(n_esc_, L);
  const std::size_t max_r = std::min(n_esc_, pp.n - R);
  double u = u_l;
  n_l = 0;
  while (n_l < max_l && rows_ok(L - n_l - 1, u - two_ds * xc)) {
    u -= two_ds * xc;
    ++n_l;
  }
  u = u_r;
  n_r = 0;
  while (n_r < max_r && rows_ok(R + n_r + 1, u + two_ds * xc)) {
    u += two_ds * xc;
    ++n_r;
  }
  return n_l >= std::min(need, max_l) && n_r >= std::min(need, max_r);
}

bool Driver::try_singular(const SwitchPoint& sp) {
  const PhasePlane& pp = *pp_;
  const std::size_t L = cell(sp.s_star);
  const std::size_t R = L + 1;
  const double u_star = sp.sd_star * sp.sd_star;
  const double xc = sp.lambda * sp.sd_star;
  {
    // The constant field must also respect every other row at the point.
    std::vector<ConstraintRow> rows;
    double cap = kInf;
    grid_.evaluate(sp.s_star, rows, cap);
    const LimitQuery q =
        alpha_beta_u(rows, u_star, grid_.zero_thresholds(), sp.row);
    if (q.alpha > q.beta || xc < q.alpha || xc > q.beta) {
      result_.log.push_back("singular switch point at s=" + fmt(sp.s_star) +
                            " rejected: slope outside the other rows' range");
      release_singular(L);
      return false;
    }
  }
  std::size_t n_l = 0, n_r = 0;
  double u0 = -1.0;
  for (std::size_t need : {std::size_t{2}, std::size_t{1}, std::size_t{0}}) {
    if (escape_ok(u_star, L, need, sp.s_star, xc, n_l, n_r)) {
      u0 = u_star;
      break;
    }
    double hi = u_star;
    double lo = (1.0 - options_.singular_lowering) * u_star;
    if (escape_ok(lo, L, need, sp.s_star, xc, n_l, n_r)) {
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (escape_ok(mid, L, need, sp.s_star, xc, n_l, n_r)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      u0 = lo;
      escape_ok(u0, L, need, sp.s_star, xc, n_l, n_r);
      break;
    }
  }
  if (u0 < 0.0) {
    result_.log.push_back("singular switch point at s=" + fmt(sp.s_star) +
                          " rejected: no feasible escape");
    release_singular(L);
    return false;
  }
  const double u_l = u0 - 2.0 * (sp.s_star - grid_.s(L)) * xc;
  const double u_r = u0 + 2.0 * (grid_.s(R) - sp.s_star) * xc;
  scratch_.u[L] = u_l;
  Lead lead;
  lead.steps = n_l;
  lead.accel = xc;
  lead.kind = SegmentKind::kEscape;
  lead.anchor = Anchor::kLeft;
  const StepResult r = backward(pp, scratch_, L, lead, &env_, frontier_);
  if (r.stop != Stop::kConnected) {
    result_.log.push_back("singular switch point at s=" + fmt(sp.s_star) +
                          " rejected: backward profile did not connect");
    return false;
  }
  commit(r.index, L);
  env_.u[L] = u_l;
  env_.set(L, xc, SegmentKind::kEscape, Anchor::kLeft);
  env_.u[R] = u_r;
  for (std::size_t i = R; i < R + n_r; ++i) {
    env_.u[i + 1] = env_.u[i] + 2.0 * pp.ds * xc;
    env_.set(i, xc, SegmentKind::kEscape, Anchor::kRight);
  }
  frontier_ = R + n_r;
  min_next_ = frontier_ + 1;
  SwitchPoint used = sp;
  used.sd_on_mvc = std::sqrt(u0);
  result_.switch_log.push_back(used);
  if (u0 < u_star) {
    result_.log.push_back("singular start at s=" + fmt(sp.s_star) + " lowered by " +
                          fmt(u_star - u0) + " in sd^2");
  }
  return true;
}

bool Driver::try_legacy(const SwitchPoint& sp) {
  const PhasePlane& pp = *pp_;
  const double two_ds = 2.0 * pp.ds;
  const auto j = static_cast<std::size_t>(std::clamp(
      std::round(sp.s_star / pp.ds), 1.0, static_cast<double>(pp.n - 1)));
  const double u0 = pp.U[j];
  auto finite_min = [](std::initializer_list<double> v) {
    double m = kInf;
    for (double x : v) {
      if (std::isfinite(x)) m = std::min(m, x);
    }
    return std::isfinite(m) ? m : 0.0;
  };
  const double x_b = finite_min({pp.limits(j - 1, u0).alpha, pp.limits(j + 1, u0).alpha,
                                 (pp.U[j] - pp.U[j - 1]) / two_ds});
  const double x_f = finite_min({pp.limits(j - 1, u0).beta, pp.limits(j + 1, u0).beta,
                                 (pp.U[j + 1] - pp.U[j]) / two_ds});
  scratch_.u[j] = u0;
  Lead lead;
  lead.steps = 1;
  lead.accel = x_b;
  lead.kind = SegmentKind::kLegacy;
  lead.anchor = Anchor::kRight;
  lead.clamp_steps = 2 * n_esc_;
  const StepResult r = backward(pp, scratch_, j, lead, &env_, frontier_);
  if (r.stop != Stop::kConnected && r.stop != Stop::kForced) {
    result_.log.push_back("legacy start at s=" + fmt(grid_.s(j)) + " did not connect");
    return false;
  }
  commit(r.index, j);
  env_.u[j] = u0;
  frontier_ = j;
  min_next_ = j + 1;
  next_lead_ = Lead{1, x_f, SegmentKind::kLegacy, Anchor::kLeft, 2 * n_esc_};
  SwitchPoint used = sp;
  used.sd_on_mvc = std::sqrt(u0);
  result_.switch_log.push_back(used);
  return true;
}

bool Driver::search(std::size_t h, bool coarse) {
  const PhasePlane& pp = *pp_;
  const auto& points = result_.switch_points.points;
  const std::size_t start = std::max({h, min_next_, std::size_t{1}});
  for (int round = coarse ? 1 : 0; round < (coarse ? 2 : 1); ++round) {
    for (std::size_t j = start; j < pp.n; ++j) {
      if (round == 0) {
        for (std::size_t p = 0; p < points.size(); ++p) {
          if (points[p].kind != SwitchKind::kSingular || singular_tried_[p]) continue;
          const std::size_t L = cell(points[p].s_star);
          if (L + 2 < h) {
            singular_tried_[p] = true;
            continue;
          }
          if (L > j + 1) continue;
          singular_tried_[p] = true;
          const bool ok = options_.legacy_singularity ? try_legacy(points[p])
                                                      : try_singular(points[p]);
          if (ok) return true;
        }
        if (near_singular_[j]) continue;
      }
      const double rel = round == 1        ? options_.coarse_lowering
                         : near_switch_[j] ? options_.switch_lowering
                                           : options_.scan_lowering;
      double u0 = 0.0;
      if (!try_start(j, rel, u0)) continue;
      scratch_.u[j] = u0;
      const StepResult r = backward(pp, scratch_, j, Lead{}, &env_, frontier_);
      if (r.stop != Stop::kConnected) continue;
      commit(r.index, j);
      env_.u[j] = u0;
      frontier_ = j;
      min_next_ = j + 1;
      SwitchPoint used;
      used.s_star = grid_.s(j);
      used.sd_on_mvc = std::sqrt(u0);
      used.kind = SwitchKind::kTangent;
      for (const SwitchPoint& sp : points) {
        if (sp.kind != SwitchKind::kSingular && cell(sp.s_star) + 1 >= j &&
            cell(sp.s_star) <= j + 1) {
          used.kind = sp.kind;
        }
      }
      result_.switch_log.push_back(used);
      if (round == 1) {
        result_.log.push_back("coarse switch at s=" + fmt(grid_.s(j)));
      }
      return true;
    }
  }
  return false;
}

StepResult Driver::final_backward(double u_end) {
  scratch_.u[pp_->n] = u_end;
  return backward(*pp_, scratch_, pp_->n, Lead{}, &env_, frontier_);
}

ParameterizationResult Driver::run() {
  result_.curves = mvc_curves(grid_, options_.mvc);
  SwitchOptions switches = options_.switches;
  switches.mvc = options_.mvc;
  result_.switch_points = find_switch_points(grid_, result_.curves, switches);
  const std::size_t n = grid_.num_intervals();
  n_esc_ = options_.n_escape > 0
               ? options_.n_escape
               : std::max<std::size_t>(5, (n + 99) / 100);
  max_profiles_ = options_.max_profiles_factor *
                  (1 + result_.switch_points.singular_count());
  for (const std::string& line : result_.switch_points.log) result_.log.push_back(line);

  auto infeasible = [&](const std::string& why, double s) {
    result_.status = SolveStatus::kInfeasible;
    result_.reason = why;
    result_.fail_s = s;
    return result_;
  };

  if (!result_.switch_points.infeasible.empty()) {
    const ZeroInertia& z = result_.switch_points.infeasible.front();
    return infeasible("zero-inertia row " + std::to_string(z.row) +
                          " cannot be satisfied",
                      z.s_star);
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(result_.curves.ceiling[i] > 0.0)) {
      return infeasible("velocity ceiling vanishes", grid_.s(i));
    }
  }
  pp_.emplace(grid_, result_.curves);
  const PhasePlane& pp = *pp_;
  const double u_beg = sd_beg_ * sd_beg_;
  const double u_end = sd_end_ * sd_end_;
  if (pp.above(0, u_beg)) return infeasible("start velocity above the ceiling", 0.0);
  if (pp.above(n, u_end)) {
    return infeasible("end velocity above the ceiling", grid_.s_end());
  }

  const auto& points = result_.switch_points.points;
  singular_tried_.assign(points.size(), false);
  near_switch_.assign(n + 1, false);
  near_singular_.assign(n + 1, false);
  for (const SwitchPoint& sp : points) {
    const std::size_t c = cell(sp.s_star);
    auto& mark = sp.kind == SwitchKind::kSingular ? near_singular_ : near_switch_;
    for (std::size_t i = c == 0 ? 0 : c - 1; i <= std::min(c + 2, n); ++i) mark[i] = true;
  }

  try {
    env_.u[0] = u_beg;
    frontier_ = 0;
    std::optional<StepResult> final;
    while (frontier_ < n) {
      const StepResult r = forward(pp, env_, frontier_, next_lead_);
      count_profile();
      next_lead_ = Lead{};
      frontier_ = r.index;
      if (r.stop == Stop::kEnd) break;
      if (r.stop == Stop::kZero) {
        return infeasible("forward profile reached zero velocity", grid_.s(r.index));
      }
      if (search(frontier_, false)) continue;
      // No switch point on the ceiling: the final profile may close the gap.
      final = final_backward(u_end);
      if (final->stop == Stop::kConnected || final->stop == Stop::kForced ||
          final->stop == Stop::kZero || final->stop == Stop::kStart) {
        break;
      }
      final.reset();
      if (!search(frontier_, true)) {
        result_.log.push_back("no switch point after s=" + fmt(grid_.s(frontier_)));
        break;
      }
    }

    if (frontier_ == n && env_.u[n] < u_end * (1.0 - 1e-9)) {
      return infeasible("end velocity not reachable", grid_.s_end());
    }
    const StepResult r = final ? *final : final_backward(u_end);
    switch (r.stop) {
      case Stop::kConnected:
        commit(r.index, n);
        break;
      case Stop::kForced:
        result_.log.push_back("final profile forced across the forward profile at s=" +
                              fmt(grid_.s(r.index)));
        commit(r.index, n);
        break;
      case Stop::kZero:
        return infeasible("backward profile reached zero velocity", grid_.s(r.index));
      case Stop::kStart:
        return infeasible("start velocity too high for the final profile", 0.0);
      default:
        if (frontier_ < n) {
          throw SolveFailure("profiles do not cover the path beyond s=" +
                             fmt(grid_.s(frontier_)));
        }
        throw SolveFailure("final profile hit the ceiling at s=" + fmt(grid_.s(r.index)));
    }
  } catch (const SolveFailure& e) {
    result_.status = SolveStatus::kFailure;
    result_.reason = e.what();
    return result_;
  }

  result_.profile = make_profile(grid_, env_, 0, n);
  try {
    result_.duration = profile_duration(result_.profile);
  } catch (const std::domain_error& e) {
    return infeasible(e.what(), -1.0);
  }
  result_.status = SolveStatus::kSuccess;
  return result_;
}

}  // namespace

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::kReachedEnd: return "reached-end";
    case Termination::kReachedStart: return "reached-start";
    case Termination::kHitMvc: return "hit-mvc";
    case Termination::kHitDirectCap: return "hit-direct-cap";
    case Termination::kHitZero: return "hit-zero";
    case Termination::kIntersected: return "intersected";
  }
  return "unknown";
}

const char* status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::kSuccess: return "success";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kFailure: return "failure";
  }
  return "unknown";
}

IntegrationResult integrate_forward(const ConstraintGrid& grid,
                                    const MvcCurves& curves, std::size_t start,
                                    double sd, const Field& field) {
  const PhasePlane pp(grid, curves);
  if (start > pp.n) throw std::invalid_argument("start index outside the grid");
  if (pp.above(start, sd * sd)) throw std::invalid_argument("start above the ceiling");
  Track t(pp.n);
  t.u[start] = sd * sd;
  Lead lead;
  if (field.constant) {
    lead.steps = pp.n;
    lead.accel = field.accel;
  }
  const StepResult r = forward(pp, t, start, lead);
  IntegrationResult out;
  out.termination = to_termination(r.stop, true);
  out.index = r.index;
  out.profile = make_profile(grid, t, start, r.index);
  return out;
}

IntegrationResult integrate_backward(const ConstraintGrid& grid,
                                     const MvcCurves& curves, std::size_t start,
                                     double sd, const Field& field,
                                     const Profile* target) {
  const PhasePlane pp(grid, curves);
  if (start > pp.n) throw std::invalid_argument("start index outside the grid");
  if (pp.above(start, sd * sd)) throw std::invalid_argument("start above the ceiling");
  Track t(pp.n);
  t.u[start] = sd * sd;
  Lead lead;
  if (field.constant) {
    lead.steps = pp.n;
    lead.accel = field.accel;
    lead.anchor = Anchor::kRight;
  }
  std::optional<Track> env;
  if (target != nullptr) {
    if (target->size() != pp.n + 1) {
      throw std::invalid_argument("target profile must cover the grid");
    }
    env.emplace(pp.n);
    for (std::size_t i = 0; i <= pp.n; ++i) env->u[i] = target->sd[i] * target->sd[i];
  }
  const StepResult r =
      backward(pp, t, start, lead, env ? &*env : nullptr, pp.n);
  IntegrationResult out;
  out.termination = to_termination(r.stop, false);
  out.index = r.index;
  if (r.stop == Stop::kConnected || r.stop == Stop::kForced) {
    out.intersection = r.index;
    t.u[r.index] = env->u[r.index];
  }
  out.profile = make_profile(grid, t, r.index, start);
  return out;
}

IntegrationResult slide_direct_cap(const ConstraintGrid& grid,
                                   const MvcCurves& curves, std::size_t from) {
  const PhasePlane pp(grid, curves);
  if (from > pp.n || !pp.cap_binding(from) || !std::isfinite(pp.Ucap[from])) {
    throw std::invalid_argument("slide must start on a binding direct cap");
  }
  Track t(pp.n);
  t.u[from] = pp.Ucap[from];
  const StepResult r = forward(pp, t, from, Lead{}, true);
  IntegrationResult out;
  out.termination = to_termination(r.stop, true);
  out.index = r.index;
  out.profile = make_profile(grid, t, from, r.index);
  return out;
}

ParameterizationResult solve_topp(const ConstraintGrid& grid, double sd_beg,
                                  double sd_end, const SolverOptions& options) {
  if (!(sd_beg >= 0.0) || !(sd_end >= 0.0)) {
    throw std::invalid_argument("endpoint velocities must be >= 0");
  }
  Driver driver(grid, sd_beg, sd_end, options);
  return driver.run();
}

ParameterizationResult solve_topp(const Path& path,
                                  const std::vector<ConstraintAdapter>& adapters,
                                  double v_beg, double v_end, std::size_t N,
                                  const SolverOptions& options) {
  if (!(v_beg >= 0.0) || !(v_end >= 0.0)) {
    throw std::invalid_argument("v_beg and v_end must be >= 0");
  }
  const ConstraintGrid grid = discretize(adapters, path, N);
  auto path_speed = [&](double s, double v) {
    if (v == 0.0) return 0.0;
    const PathPoint p = path.eval(s);
    double norm = 0.0;
    for (double x : p.q_s) norm += x * x;
    norm = std::sqrt(norm);
    if (!(norm > 0.0)) throw std::invalid_argument("nonzero speed at a stationary path end");
    return v / norm;
  };
  return solve_topp(grid, path_speed(0.0, v_beg), path_speed(path.s_end(), v_end),
                    options);
}

}  // namespace topp
