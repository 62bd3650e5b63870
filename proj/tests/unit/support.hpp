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

#ifndef TOPP_TESTS_SUPPORT_HPP_
#define TOPP_TESTS_SUPPORT_HPP_

#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

#include "topp/constraints.hpp"
#include "topp/path.hpp"

namespace topp::testing {

// Grid of N + 1 samples on [0, s_end] filled from row and cap callbacks.
inline ConstraintGrid make_grid(
    double s_end, std::size_t N, std::size_t num_rows,
    const std::function<std::vector<ConstraintRow>(double)>& rows_at,
    const std::function<double(double)>& cap_at = {}) {
  std::vector<ConstraintRow> rows;
  Vector cap;
  for (std::size_t i = 0; i <= N; ++i) {
    const double s = s_end * static_cast<double>(i) / static_cast<double>(N);
    const auto r = rows_at(s);
    rows.insert(rows.end(), r.begin(), r.end());
    cap.push_back(cap_at ? cap_at(s) : kInf);
  }
  return ConstraintGrid(s_end, num_rows, std::move(rows), std::move(cap));
}

// Symmetric bound |sdd| <= amax on a constant-coefficient grid.
inline ConstraintGrid accel_grid(double s_end, std::size_t N, double amax,
                                 double cap = kInf) {
  return make_grid(
      s_end, N, 2,
      [amax](double) {
        return std::vector<ConstraintRow>{{1.0, 0.0, -amax}, {-1.0, 0.0, -amax}};
      },
      [cap](double) { return cap; });
}

// 1-dof straight path q(s) = s on [0, length].
inline Path line_path(double length) {
  return Path({0.0, length}, {Path::PolynomialPiece{{{0.0, 1.0}}}});
}

inline Vector random_point(std::mt19937_64& rng, std::size_t dof, double lo,
                           double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector p(dof);
  for (double& x : p) x = u(rng);
  return p;
}

}  // namespace topp::testing

#endif  // TOPP_TESTS_SUPPORT_HPP_
