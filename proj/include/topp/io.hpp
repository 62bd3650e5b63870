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

#ifndef TOPP_IO_HPP_
#define TOPP_IO_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "topp/integrator.hpp"
#include "topp/limits.hpp"
#include "topp/oracle.hpp"
#include "topp/profile.hpp"
#include "topp/retiming.hpp"
#include "topp/switchpoints.hpp"

namespace topp {

// Comma-separated table with one header line.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a header column; throws std::out_of_range when absent.
  std::size_t column(const std::string& name) const;
  Vector numbers(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);

// Columns: s, sd, sdd, kind, anchor.
void write_profile_csv(std::ostream& out, const Profile& profile);
// Needs s, sd, sdd; kind and anchor are optional.
Profile read_profile_csv(std::istream& in);

// Columns: t, q0.., qd0.., qdd0.., s, sd, sdd.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);
// Columns: s, sd, kind, row, lambda, sd_star, sd_dagger.
void write_switch_csv(std::ostream& out, const std::vector<SwitchPoint>& points);
// Columns: s, mvc, mvc_direct.
void write_mvc_csv(std::ostream& out, const Vector& s, const MvcCurves& curves);
// Columns: s, sd.
void write_dp_csv(std::ostream& out, const Vector& s, const DpResult& result);
// Columns: row, worst_residual, s, index.
void write_residual_csv(std::ostream& out, const ValidationReport& report);

}  // namespace topp

#endif  // TOPP_IO_HPP_
