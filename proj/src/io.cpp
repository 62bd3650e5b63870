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

#include "topp/io.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace topp {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double to_double(const std::string& text) {
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("bad number '" + text + "'");
  return v;
}

void precise(std::ostream& out) { out << std::setprecision(17); }

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::out_of_range("csv column '" + name + "' not found");
}

Vector CsvTable::numbers(const std::string& name) const {
  const std::size_t c = column(name);
  Vector out;
  for (const auto& row : rows) {
    if (c >= row.size()) throw std::invalid_argument("short csv row");
    out.push_back(to_double(row[c]));
  }
  return out;
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (t.header.empty()) {
      t.header = split(line);
    } else {
      t.rows.push_back(split(line));
    }
  }
  if (t.header.empty()) throw std::invalid_argument("empty csv");
  return t;
}

void write_profile_csv(std::ostream& out, const Profile& p) {
  precise(out);
  out << "s,sd,sdd,kind,anchor\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::size_t seg = i < p.kind.size() ? i : p.kind.size();
    out << p.s[i] << ',' << p.sd[i] << ',' << p.sdd[i] << ',';
    if (seg < p.kind.size()) {
      out << segment_kind_name(p.kind[seg]) << ','
          << (p.anchor[seg] == Anchor::kRight ? "right" : "left");
    } else {
      out << ',';
    }
    out << '\n';
  }
}

Profile read_profile_csv(std::istream& in) {
  const CsvTable t = read_csv(in);
  Profile p;
  p.s = t.numbers("s");
  p.sd = t.numbers("sd");
  p.sdd = t.numbers("sdd");
  for (std::size_t i = 1; i < p.s.size(); ++i) {
    if (!(p.s[i] > p.s[i - 1])) throw std::invalid_argument("profile s must increase");
  }
  bool has_kind = false;
  for (const auto& h : t.header) has_kind = has_kind || h == "kind";
  if (has_kind && t.rows.size() > 1) {
    const std::size_t kc = t.column("kind");
    const std::size_t ac = t.column("anchor");
    for (std::size_t i = 0; i + 1 < t.rows.size(); ++i) {
      const std::string& k = t.rows[i].at(kc);
      SegmentKind kind = SegmentKind::kBeta;
      for (SegmentKind c : {SegmentKind::kBeta, SegmentKind::kAlpha, SegmentKind::kSlide,
                            SegmentKind::kEscape, SegmentKind::kConnect, SegmentKind::kLegacy}) {
        if (k == segment_kind_name(c)) kind = c;
      }
      p.kind.push_back(kind);
      p.anchor.push_back(t.rows[i].at(ac) == "right" ? Anchor::kRight : Anchor::kLeft);
    }
  }
  return p;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& tr) {
  precise(out);
  const std::size_t dof = tr.q.empty() ? 0 : tr.q.front().size();
  out << 't';
  for (const char* name : {"q", "qd", "qdd"}) {
    for (std::size_t j = 0; j < dof; ++j) out << ',' << name << j;
  }
  out << ",s,sd,sdd\n";
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    out << tr.t[i];
    for (const auto* series : {&tr.q, &tr.qd, &tr.qdd}) {
      for (double v : (*series)[i]) out << ',' << v;
    }
    out << ',' << tr.s[i] << ',' << tr.sd[i] << ',' << tr.sdd[i] << '\n';
  }
}

void write_switch_csv(std::ostream& out, const std::vector<SwitchPoint>& points) {
  precise(out);
  out << "s,sd,kind,row,lambda,sd_star,sd_dagger\n";
  for (const SwitchPoint& p : points) {
    out << p.s_star << ',' << p.sd_on_mvc << ',' << switch_kind_name(p.kind) << ',' << p.row
        << ',' << p.lambda << ',' << p.sd_star << ',' << p.sd_dagger << '\n';
  }
}

void write_mvc_csv(std::ostream& out, const Vector& s, const MvcCurves& curves) {
  precise(out);
  out << "s,mvc,mvc_direct\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << s[i] << ',' << curves.mvc[i] << ',' << curves.mvc_direct[i] << '\n';
  }
}

void write_dp_csv(std::ostream& out, const Vector& s, const DpResult& result) {
  precise(out);
  out << "s,sd\n";
  for (std::size_t i = 0; i < result.sd.size(); ++i) out << s[i] << ',' << result.sd[i] << '\n';
}

void write_residual_csv(std::ostream& out, const ValidationReport& report) {
  precise(out);
  out << "row,worst_residual,s,index\n";
  for (const RowViolation& w : report.worst_per_row) {
    out << w.row << ',' << w.residual << ',' << w.s << ',' << w.index << '\n';
  }
}

}  // namespace topp
