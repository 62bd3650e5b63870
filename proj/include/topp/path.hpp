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

#ifndef TOPP_PATH_HPP_
#define TOPP_PATH_HPP_

#include <array>
#include <cstddef>
#include <variant>
#include <vector>

namespace topp {

using Vector = std::vector<double>;

enum class PathKind { kCubicSpline, kBezier };

// Configuration and its first two derivatives with respect to the path
// parameter s.
struct PathPoint {
  Vector q;
  Vector q_s;
  Vector q_ss;
};

// A C1, piecewise-C2 geometric path q(s), s in [0, s_end].
//
// The path is a sequence of pieces joined at knots 0 = s_0 < ... < s_m = s_end.
// Each piece is evaluated in the local coordinate t = s - s_k. At an interior
// knot, eval() returns the right-sided limit; eval_left() the left-sided one.
// Immutable after construction.
class Path {
 public:
  // q_j(t) = sum_i coeffs[j][i] * t^i for every dof j.
  struct PolynomialPiece {
    std::vector<Vector> coeffs;
  };
  // q(t) = center + radius * (cos(t / radius) * x + sin(t / radius) * y),
  // x and y orthonormal. Parameterized by arc length.
  struct ArcPiece {
    Vector center;
    Vector x;
    Vector y;
    double radius = 1.0;
  };
  using Piece = std::variant<PolynomialPiece, ArcPiece>;

  // Throws std::invalid_argument on inconsistent knots, pieces or dof.
  Path(Vector knots, std::vector<Piece> pieces);

  std::size_t dof() const { return dof_; }
  double s_end() const { return knots_.back(); }
  const Vector& knots() const { return knots_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  // Throws std::domain_error if s lies outside [0, s_end] by more than
  // kDomainSlack. Values within the slack are clamped.
  PathPoint eval(double s) const;
  void eval(double s, PathPoint& out) const;
  PathPoint eval_left(double s) const;

  static constexpr double kDomainSlack = 1e-12;

 private:
  std::size_t piece_index(double s, bool left) const;
  void eval_piece(std::size_t k, double s, PathPoint& out) const;

  Vector knots_;
  std::vector<Piece> pieces_;
  std::size_t dof_ = 0;
};

// Interpolates the waypoints in order, parameterized by cumulative chord
// length. kCubicSpline is a natural cubic spline (C2); kBezier is a composite
// cubic Bezier with Catmull-Rom tangents (C1).
Path build_path(const std::vector<Vector>& waypoints, PathKind kind);

// Single cubic Bezier with the given control points, s = L * tau where L is
// the control-polygon length.
Path bezier_path(const std::array<Vector, 4>& control_points);

// Straight segments joined by circular blends that stay within max_deviation
// of each interior waypoint. Arc-length parameterized, so ||q_s|| = 1.
Path blended_path(const std::vector<Vector>& waypoints, double max_deviation);

}  // namespace topp

#endif  // TOPP_PATH_HPP_
