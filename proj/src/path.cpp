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

#include "topp/path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace topp {
namespace {

double norm(const Vector& v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

Vector sub(const Vector& a, const Vector& b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector scaled(const Vector& v, double k) {
  Vector out(v);
  for (double& x : out) x *= k;
  return out;
}

double dot(const Vector& a, const Vector& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

void check_waypoints(const std::vector<Vector>& waypoints) {
  if (waypoints.size() < 2) {
    throw std::invalid_argument("path needs at least 2 waypoints");
  }
  const std::size_t n = waypoints.front().size();
  if (n == 0) throw std::invalid_argument("waypoints must have dimension >= 1");
  for (std::size_t k = 0; k < waypoints.size(); ++k) {
    if (waypoints[k].size() != n) {
      throw std::invalid_argument("waypoint " + std::to_string(k) +
                                  " has dimension " +
                                  std::to_string(waypoints[k].size()) +
                                  ", expected " + std::to_string(n));
    }
  }
}

Vector chord_knots(const std::vector<Vector>& waypoints) {
  Vector knots(waypoints.size(), 0.0);
  for (std::size_t k = 1; k < waypoints.size(); ++k) {
    const double h = norm(sub(waypoints[k], waypoints[k - 1]));
    if (!(h > 0.0)) {
      throw std::invalid_argument("waypoints " + std::to_string(k - 1) +
                                  " and " + std::to_string(k) + " coincide");
    }
    knots[k] = knots[k - 1] + h;
  }
  return knots;
}

// Natural cubic spline second derivatives for one coordinate.
Vector natural_second_derivatives(const Vector& knots, const Vector& y) {
  const std::size_t m = knots.size();
  Vector second(m, 0.0);
  if (m < 3) return second;
  // Thomas algorithm on the interior unknowns.
  const std::size_t n = m - 2;
  Vector diag(n), upper(n), rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double h0 = knots[i + 1] - knots[i];
    const double h1 = knots[i + 2] - knots[i + 1];
    diag[i] = 2.0 * (h0 + h1);
    upper[i] = h1;
    rhs[i] = 6.0 * ((y[i + 2] - y[i + 1]) / h1 - (y[i + 1] - y[i]) / h0);
  }
  for (std::size_t i = 1; i < n; ++i) {
    const double lower = knots[i + 1] - knots[i];
    const double w = lower / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  second[n] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    second[i + 1] = (rhs[i] - upper[i] * second[i + 2]) / diag[i];
  }
  return second;
}

Path::PolynomialPiece line_piece(const Vector& from, const Vector& direction) {
  Path::PolynomialPiece piece;
  for (std::size_t j = 0; j < from.size(); ++j) {
    piece.coeffs.push_back({from[j], direction[j]});
  }
  return piece;
}

}  // namespace

Path::Path(Vector knots, std::vector<Piece> pieces)
    : knots_(std::move(knots)), pieces_(std::move(pieces)) {
  if (knots_.size() < 2 || pieces_.size() + 1 != knots_.size()) {
    throw std::invalid_argument("path needs m pieces and m+1 knots, m >= 1");
  }
  if (knots_.front() != 0.0) {
    throw std::invalid_argument("first knot must be 0");
  }
  for (std::size_t k = 1; k < knots_.size(); ++k) {
    if (!(knots_[k] > knots_[k - 1])) {
      throw std::invalid_argument("knots must be strictly increasing");
    }
  }
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    std::size_t n = 0;
    if (const auto* poly = std::get_if<PolynomialPiece>(&pieces_[k])) {
      n = poly->coeffs.size();
      for (const auto& c : poly->coeffs) {
        if (c.empty()) throw std::invalid_argument("empty polynomial");
      }
    } else {
      const auto& arc = std::get<ArcPiece>(pieces_[k]);
      n = arc.center.size();
      if (arc.x.size() != n || arc.y.size() != n || !(arc.radius > 0.0)) {
        throw std::invalid_argument("malformed arc piece");
      }
    }
    if (k == 0) dof_ = n;
    if (n == 0 || n != dof_) {
      throw std::invalid_argument("piece " + std::to_string(k) +
                                  " has inconsistent dof");
    }
  }
}

std::size_t Path::piece_index(double s, bool left) const {
  const auto begin = knots_.begin() + 1;
  const auto end = knots_.end() - 1;
  // Right-sided: first interior knot strictly greater than s.
  auto it = left ? std::lower_bound(begin, end, s) : std::upper_bound(begin, end, s);
  return static_cast<std::size_t>(it - begin);
}

void Path::eval_piece(std::size_t k, double s, PathPoint& out) const {
  const double t = s - knots_[k];
  out.q.resize(dof_);
  out.q_s.resize(dof_);
  out.q_ss.resize(dof_);
  if (const auto* poly = std::get_if<PolynomialPiece>(&pieces_[k])) {
    for (std::size_t j = 0; j < dof_; ++j) {
      const Vector& c = poly->coeffs[j];
      double p = 0.0, dp = 0.0, ddp = 0.0;
      for (std::size_t i = c.size(); i-- > 0;) {
        ddp = ddp * t + 2.0 * dp;
        dp = dp * t + p;
        p = p * t + c[i];
      }
      out.q[j] = p;
      out.q_s[j] = dp;
      out.q_ss[j] = ddp;
    }
    return;
  }
  const auto& arc = std::get<ArcPiece>(pieces_[k]);
  const double angle = t / arc.radius;
  const double cs = std::cos(angle), sn = std::sin(angle);
  for (std::size_t j = 0; j < dof_; ++j) {
    out.q[j] = arc.center[j] + arc.radius * (cs * arc.x[j] + sn * arc.y[j]);
    out.q_s[j] = -sn * arc.x[j] + cs * arc.y[j];
    out.q_ss[j] = -(cs * arc.x[j] + sn * arc.y[j]) / arc.radius;
  }
}

void Path::eval(double s, PathPoint& out) const {
  if (s < -kDomainSlack || s > s_end() + kDomainSlack) {
    throw std::domain_error("s = " + std::to_string(s) + " outside [0, " +
                            std::to_string(s_end()) + "]");
  }
  s = std::clamp(s, 0.0, s_end());
  eval_piece(piece_index(s, false), s, out);
}

PathPoint Path::eval(double s) const {
  PathPoint out;
  eval(s, out);
  return out;
}

PathPoint Path::eval_left(double s) const {
  if (s < -kDomainSlack || s > s_end() + kDomainSlack) {
    throw std::domain_error("s outside path domain");
  }
  s = std::clamp(s, 0.0, s_end());
  PathPoint out;
  eval_piece(piece_index(s, true), s, out);
  return out;
}

Path build_path(const std::vector<Vector>& waypoints, PathKind kind) {
  check_waypoints(waypoints);
  const std::size_t n = waypoints.front().size();
  const std::size_t m = waypoints.size();
  Vector knots = chord_knots(waypoints);

  // Per-dof Hermite data: values and slopes at every knot.
  std::vector<Vector> slopes(m, Vector(n, 0.0));
  std::vector<Vector> second(n);
  if (kind == PathKind::kCubicSpline) {
    for (std::size_t j = 0; j < n; ++j) {
      Vector y(m);
      for (std::size_t k = 0; k < m; ++k) y[k] = waypoints[k][j];
      second[j] = natural_second_derivatives(knots, y);
    }
  } else {
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t lo = k == 0 ? 0 : k - 1;
      const std::size_t hi = k + 1 == m ? k : k + 1;
      for (std::size_t j = 0; j < n; ++j) {
        slopes[k][j] = (waypoints[hi][j] - waypoints[lo][j]) / (knots[hi] - knots[lo]);
      }
    }
  }

  std::vector<Path::Piece> pieces;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const double h = knots[k + 1] - knots[k];
    Path::PolynomialPiece piece;
    for (std::size_t j = 0; j < n; ++j) {
      const double y0 = waypoints[k][j], y1 = waypoints[k + 1][j];
      if (kind == PathKind::kCubicSpline) {
        const double m0 = second[j][k], m1 = second[j][k + 1];
        const double b = (y1 - y0) / h - h * (2.0 * m0 + m1) / 6.0;
        piece.coeffs.push_back({y0, b, 0.5 * m0, (m1 - m0) / (6.0 * h)});
      } else {
        // Hermite form of the Bezier with control points y0 + d0 h/3 and
        // y1 - d1 h/3.
        const double d0 = slopes[k][j], d1 = slopes[k + 1][j];
        const double secant = (y1 - y0) / h;
        piece.coeffs.push_back({y0, d0, (3.0 * secant - 2.0 * d0 - d1) / h,
                                (d0 + d1 - 2.0 * secant) / (h * h)});
      }
    }
    pieces.emplace_back(std::move(piece));
  }
  return Path(std::move(knots), std::move(pieces));
}

Path bezier_path(const std::array<Vector, 4>& control_points) {
  const std::vector<Vector> pts(control_points.begin(), control_points.end());
  check_waypoints(pts);
  const std::size_t n = pts.front().size();
  double length = 0.0;
  for (std::size_t k = 1; k < 4; ++k) length += norm(sub(pts[k], pts[k - 1]));
  if (!(length > 0.0)) throw std::invalid_argument("degenerate Bezier");
  Path::PolynomialPiece piece;
  for (std::size_t j = 0; j < n; ++j) {
    const double p0 = pts[0][j], p1 = pts[1][j], p2 = pts[2][j], p3 = pts[3][j];
    piece.coeffs.push_back({p0, 3.0 * (p1 - p0) / length,
                            3.0 * (p0 - 2.0 * p1 + p2) / (length * length),
                            (p3 - 3.0 * p2 + 3.0 * p1 - p0) /
                                (length * length * length)});
  }
  return Path({0.0, length}, {std::move(piece)});
}

Path blended_path(const std::vector<Vector>& waypoints, double max_deviation) {
  check_waypoints(waypoints);
  if (!(max_deviation > 0.0)) {
    throw std::invalid_argument("max_deviation must be positive");
  }
  const std::size_t m = waypoints.size();
  Vector knots{0.0};
  std::vector<Path::Piece> pieces;
  Vector cursor = waypoints.front();

  auto add_line_to = [&](const Vector& target) {
    const Vector delta = sub(target, cursor);
    const double len = norm(delta);
    if (len <= 1e-12) return;
    pieces.emplace_back(line_piece(cursor, scaled(delta, 1.0 / len)));
    knots.push_back(knots.back() + len);
    cursor = target;
  };

  for (std::size_t k = 1; k + 1 < m; ++k) {
    const Vector in = sub(waypoints[k], waypoints[k - 1]);
    const Vector out = sub(waypoints[k + 1], waypoints[k]);
    const double in_len = norm(in), out_len = norm(out);
    if (in_len <= 0.0 || out_len <= 0.0) {
      throw std::invalid_argument("coincident waypoints");
    }
    const Vector d1 = scaled(in, 1.0 / in_len);
    const Vector d2 = scaled(out, 1.0 / out_len);
    const double angle = std::acos(std::clamp(dot(d1, d2), -1.0, 1.0));
    if (angle > M_PI - 1e-9) {
      throw std::invalid_argument("path reverses at waypoint " + std::to_string(k));
    }
    if (angle < 1e-9) {
      add_line_to(waypoints[k]);
      continue;
    }
    const double half = 0.5 * angle;
    const double distance =
        std::min({0.5 * in_len, 0.5 * out_len,
                  max_deviation * std::sin(half) / (1.0 - std::cos(half))});
    const double radius = distance / std::tan(half);
    Vector bisector = sub(d2, d1);
    bisector = scaled(bisector, 1.0 / norm(bisector));
    Path::ArcPiece arc;
    arc.radius = radius;
    arc.center = waypoints[k];
    for (std::size_t j = 0; j < arc.center.size(); ++j) {
      arc.center[j] += bisector[j] * radius / std::cos(half);
    }
    Vector start = waypoints[k];
    for (std::size_t j = 0; j < start.size(); ++j) start[j] -= d1[j] * distance;
    add_line_to(start);
    arc.x = scaled(sub(start, arc.center), 1.0 / radius);
    arc.y = d1;
    pieces.emplace_back(arc);
    knots.push_back(knots.back() + angle * radius);
    cursor = waypoints[k];
    for (std::size_t j = 0; j < cursor.size(); ++j) cursor[j] += d2[j] * distance;
  }
  add_line_to(waypoints.back());
  if (pieces.empty()) throw std::invalid_argument("degenerate path");
  return Path(std::move(knots), std::move(pieces));
}

}  // namespace topp
