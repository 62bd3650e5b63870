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

#ifndef TOPP_PROFILE_HPP_
#define TOPP_PROFILE_HPP_

#include <cstdint>
#include <vector>

#include "topp/path.hpp"

namespace topp {

// Field followed on one grid segment.
enum class SegmentKind : std::uint8_t {
  kBeta,     // forward, maximal acceleration
  kAlpha,    // backward, minimal acceleration
  kSlide,    // along (or onto) the feasibility ceiling
  kEscape,   // constant field through a singular switch point
  kConnect,  // junction between two profiles
  kLegacy,   // clamped to the ceiling by the legacy singularity mode
};

// Grid point at which a segment's acceleration satisfies the rows exactly.
enum class Anchor : std::uint8_t { kLeft, kRight };

const char* segment_kind_name(SegmentKind kind);

// Phase-plane profile on grid-aligned abscissae. sdd[i] is the constant
// acceleration on [s[i], s[i+1]], so sd[i+1]^2 = sd[i]^2 + 2 (s[i+1] - s[i])
// sdd[i]; the last entry repeats sdd[n-2]. kind and anchor hold one entry
// per segment and may be empty for profiles read back from CSV.
struct Profile {
  Vector s;
  Vector sd;
  Vector sdd;
  std::vector<SegmentKind> kind;
  std::vector<Anchor> anchor;

  std::size_t size() const { return s.size(); }
};

}  // namespace topp

#endif  // TOPP_PROFILE_HPP_
