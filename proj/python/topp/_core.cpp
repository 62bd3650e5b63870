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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "topp/batch.hpp"
#include "topp/integrator.hpp"
#include "topp/oracle.hpp"
#include "topp/problem.hpp"
#include "topp/retiming.hpp"

namespace py = pybind11;

namespace {

py::dict switch_point_dict(const topp::SwitchPoint& p) {
  py::dict d;
  d["s"] = p.s_star;
  d["sd"] = p.sd_on_mvc;
  d["kind"] = topp::switch_kind_name(p.kind);
  d["row"] = p.row;
  d["lambda"] = p.lambda;
  d["sd_star"] = p.sd_star;
  d["sd_dagger"] = p.sd_dagger;
  return d;
}

py::dict profile_dict(const topp::Profile& p) {
  py::dict d;
  d["s"] = p.s;
  d["sd"] = p.sd;
  d["sdd"] = p.sdd;
  std::vector<std::string> kinds;
  for (topp::SegmentKind k : p.kind) kinds.emplace_back(topp::segment_kind_name(k));
  d["kind"] = kinds;
  return d;
}

py::dict solve(const std::string& text, bool legacy) {
  topp::Problem problem = topp::parse_problem(text);
  if (legacy) problem.solver.legacy_singularity = true;
  const topp::ParameterizationResult r = topp::solve_problem(problem);
  py::dict d;
  d["status"] = topp::status_name(r.status);
  d["reason"] = r.reason;
  d["duration"] = r.duration;
  d["profile"] = profile_dict(r.profile);
  py::list points, used;
  for (const auto& p : r.switch_points.points) points.append(switch_point_dict(p));
  for (const auto& p : r.switch_log) used.append(switch_point_dict(p));
  d["switch_points"] = points;
  d["switch_log"] = used;
  d["mvc"] = r.curves.mvc;
  d["mvc_direct"] = r.curves.mvc_direct;
  d["log"] = r.log;
  return d;
}

py::dict oracle(const std::string& text, std::size_t nv, bool strict) {
  const topp::Problem problem = topp::parse_problem(text);
  const topp::Path path = topp::build_problem_path(problem);
  const topp::ConstraintGrid grid = topp::discretize(problem.constraints, path, problem.N);
  const auto sd = topp::endpoint_sd(problem, path);
  const topp::DpResult r = topp::dp_min_time(grid, sd[0], sd[1], {nv, strict});
  py::dict d;
  d["feasible"] = r.feasible;
  d["duration"] = r.duration;
  d["s"] = grid.s_grid();
  d["sd"] = r.sd;
  d["reason"] = r.reason;
  return d;
}

py::dict validate(const std::string& text, const topp::Vector& s, const topp::Vector& sd,
                  const topp::Vector& sdd, double tolerance, bool scaled) {
  const topp::Problem problem = topp::parse_problem(text);
  const topp::ConstraintGrid grid = topp::discretize_problem(problem);
  if (s.size() != sd.size() || s.size() != sdd.size()) {
    throw std::invalid_argument("s, sd and sdd must have equal length");
  }
  topp::Profile p;
  p.s = s;
  p.sd = sd;
  p.sdd = sdd;
  topp::ValidateOptions vo;
  vo.tolerance = tolerance;
  vo.scaled = scaled;
  const topp::ValidationReport rep = topp::validate(p, grid, vo);
  py::dict d;
  d["pass"] = rep.pass;
  d["max_residual"] = rep.max_residual;
  d["max_scaled_residual"] = rep.max_scaled_residual;
  d["summary"] = rep.summary();
  return d;
}

py::dict batch(std::size_t instances, std::size_t dof, std::uint64_t seed, std::size_t N,
               std::size_t threads) {
  topp::BatchOptions o;
  o.instances = instances;
  o.dof = dof;
  o.seed = seed;
  o.N = N;
  o.threads = threads;
  const topp::BatchSummary s = topp::run_batch(o);
  py::dict d;
  d["successes"] = s.successes;
  d["infeasible"] = s.infeasible;
  d["failures"] = s.failures;
  d["invalid"] = s.invalid;
  d["singular_switch_points"] = s.singular_total;
  d["mean_seconds"] = s.mean_seconds;
  d["median_seconds"] = s.median_seconds;
  d["summary"] = s.deterministic_text();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Time-optimal path parameterization";
  py::register_exception<topp::ProblemError>(m, "ProblemError", PyExc_ValueError);

  m.def("normalize", [](const std::string& text) {
    return topp::dump_problem(topp::parse_problem(text));
  }, py::arg("problem"), "Problem JSON with every default filled in.");
  m.def("solve", &solve, py::arg("problem"), py::arg("legacy") = false,
        "Solve a problem given as JSON text.");
  m.def("oracle", &oracle, py::arg("problem"), py::arg("nv") = 400, py::arg("strict") = false,
        "Dynamic-programming minimum time on the problem grid.");
  m.def("validate", &validate, py::arg("problem"), py::arg("s"), py::arg("sd"), py::arg("sdd"),
        py::arg("tolerance") = 1e-6, py::arg("scaled") = true,
        "Check a grid profile against the problem rows.");
  m.def("batch", &batch, py::arg("instances") = 100, py::arg("dof") = 7, py::arg("seed") = 42,
        py::arg("N") = 200, py::arg("threads") = 1, "Random Bezier batch summary.");
}
