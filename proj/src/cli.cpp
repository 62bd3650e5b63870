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

#include "topp/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "topp/batch.hpp"
#include "topp/io.hpp"
#include "topp/oracle.hpp"
#include "topp/problem.hpp"
#include "topp/retiming.hpp"

namespace topp {
namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Opens `path` for writing, or returns `fallback` for "" and "-".
std::ostream& sink(const std::string& path, std::unique_ptr<std::ofstream>& file,
                   std::ostream& fallback) {
  if (path.empty() || path == "-") return fallback;
  file = std::make_unique<std::ofstream>(path);
  if (!*file) throw IoError("cannot write '" + path + "'");
  return *file;
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw IoError("cannot write '" + path + "'");
  fn(f);
}

int exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::kSuccess: return kExitSuccess;
    case SolveStatus::kInfeasible: return kExitInfeasible;
    case SolveStatus::kFailure: return kExitFailure;
  }
  return kExitFailure;
}

struct SolveArgs {
  std::string file, out_profile, out_switch, out_trajectory, out_residual;
  double dt = 0.01;
  std::size_t N = 0;
  bool legacy = false;
  bool echo = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  Problem problem = load_problem(a.file);
  if (a.N > 0) problem.N = a.N;
  if (a.legacy) problem.solver.legacy_singularity = true;
  if (a.echo) out << dump_problem(problem) << "\n";
  const Path path = build_problem_path(problem);
  const ParameterizationResult r = solve_problem(problem);
  out << "status: " << status_name(r.status) << "\n";
  if (!r.ok()) {
    out << "reason: " << r.reason << "\n";
    if (r.fail_s >= 0.0) out << "at_s: " << r.fail_s << "\n";
  } else {
    out.precision(10);
    out << "duration: " << r.duration << "\n";
  }
  out << "profiles: " << r.profiles << "\n"
      << "switch_points: " << r.switch_points.points.size() << " (singular "
      << r.switch_points.singular_count() << ")\n";
  for (const std::string& line : r.log) out << "log: " << line << "\n";
  write_file(a.out_switch, [&](std::ostream& f) { write_switch_csv(f, r.switch_points.points); });
  if (r.ok()) {
    const ConstraintGrid grid = discretize(problem.constraints, path, problem.N);
    ValidateOptions vo;
    vo.ceiling = &r.curves.ceiling;
    const ValidationReport report = validate(r.profile, grid, vo);
    out << "validation: " << (report.pass ? "pass" : "fail")
        << " max_scaled_residual=" << report.max_scaled_residual << "\n";
    write_file(a.out_profile, [&](std::ostream& f) { write_profile_csv(f, r.profile); });
    write_file(a.out_residual, [&](std::ostream& f) { write_residual_csv(f, report); });
    if (!a.out_trajectory.empty()) {
      const Trajectory tr = retime(path, r.profile, a.dt);
      write_file(a.out_trajectory, [&](std::ostream& f) { write_trajectory_csv(f, tr); });
    }
  }
  return exit_code(r.status);
}

int cmd_mvc(const std::string& file, const std::string& dest, std::ostream& out) {
  const Problem problem = load_problem(file);
  const ConstraintGrid grid = discretize_problem(problem);
  const MvcCurves curves = mvc_curves(grid, problem.solver.mvc);
  std::unique_ptr<std::ofstream> f;
  write_mvc_csv(sink(dest, f, out), grid.s_grid(), curves);
  return kExitSuccess;
}

int cmd_switch(const std::string& file, const std::string& dest, std::ostream& out) {
  const Problem problem = load_problem(file);
  const ConstraintGrid grid = discretize_problem(problem);
  const MvcCurves curves = mvc_curves(grid, problem.solver.mvc);
  SwitchOptions so = problem.solver.switches;
  so.mvc = problem.solver.mvc;
  const SwitchPointReport report = find_switch_points(grid, curves, so);
  std::unique_ptr<std::ofstream> f;
  write_switch_csv(sink(dest, f, out), report.points);
  return report.infeasible.empty() ? kExitSuccess : kExitInfeasible;
}

int cmd_oracle(const std::string& file, std::size_t nv, bool strict,
               const std::string& out_path, std::ostream& out) {
  const Problem problem = load_problem(file);
  const Path path = build_problem_path(problem);
  const ConstraintGrid grid = discretize(problem.constraints, path, problem.N);
  const auto sd = endpoint_sd(problem, path);
  DpOptions o;
  o.nv = nv;
  o.strict = strict;
  const DpResult r = dp_min_time(grid, sd[0], sd[1], o);
  if (!r.feasible) {
    out << "infeasible: " << r.reason << "\n";
    return kExitInfeasible;
  }
  out.precision(10);
  out << "T_dp: " << r.duration << "\n";
  write_file(out_path, [&](std::ostream& f) { write_dp_csv(f, grid.s_grid(), r); });
  return kExitSuccess;
}

int cmd_batch(const BatchOptions& o, const std::string& dest, std::ostream& out) {
  const BatchSummary s = run_batch(o);
  out << s.text();
  write_file(dest, [&](std::ostream& f) {
    f.precision(12);
    f << "index,status,duration,solve_seconds,singular,valid,max_scaled_residual\n";
    for (const BatchInstance& r : s.instances) {
      f << r.index << ',' << status_name(r.status) << ',' << r.duration << ','
        << r.solve_seconds << ',' << r.singular << ',' << (r.valid ? 1 : 0) << ','
        << r.max_scaled_residual << '\n';
    }
  });
  return kExitSuccess;
}

int cmd_validate(const std::string& file, const std::string& profile_path, double tol,
                 bool unscaled, std::ostream& out) {
  const Problem problem = load_problem(file);
  const ConstraintGrid grid = discretize_problem(problem);
  std::ifstream in(profile_path);
  if (!in) throw IoError("cannot read '" + profile_path + "'");
  const Profile profile = read_profile_csv(in);
  ValidateOptions vo;
  vo.tolerance = tol;
  vo.scaled = !unscaled;
  const MvcCurves curves = mvc_curves(grid, problem.solver.mvc);
  if (profile.size() == grid.num_points()) vo.ceiling = &curves.ceiling;
  const ValidationReport report = validate(profile, grid, vo);
  out << report.summary();
  return report.pass ? kExitSuccess : kExitInfeasible;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-optimal path parameterization by phase-plane integration", "topp"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve a problem file");
  s->add_option("problem", solve.file, "Problem file")->required();
  s->add_option("--out-profile", solve.out_profile, "Profile CSV (s, sd, sdd)");
  s->add_option("--out-switch", solve.out_switch, "Switch point CSV");
  s->add_option("--out-trajectory", solve.out_trajectory, "Trajectory CSV (t, q, qd, qdd)");
  s->add_option("--out-residual", solve.out_residual, "Per-row worst residual CSV");
  s->add_option("--dt", solve.dt, "Trajectory sampling step")->check(CLI::PositiveNumber);
  s->add_option("--N", solve.N, "Override the grid size")->check(CLI::Range(8, 1 << 24));
  s->add_flag("--legacy", solve.legacy, "Legacy singularity treatment");
  s->add_flag("--echo", solve.echo, "Print the normalized problem");

  std::string file, dest, out_path, profile_path;
  auto* m = app.add_subcommand("mvc", "Dump s, MVC, MVC_direct as CSV");
  m->add_option("problem", file, "Problem file")->required();
  m->add_option("--out", dest, "Output CSV (default stdout)");

  auto* w = app.add_subcommand("switch", "List switch points as CSV");
  w->add_option("problem", file, "Problem file")->required();
  w->add_option("--out", dest, "Output CSV (default stdout)");

  std::size_t nv = 400;
  bool strict = false;
  auto* o = app.add_subcommand("oracle", "Dynamic-programming minimum time");
  o->add_option("problem", file, "Problem file")->required();
  o->add_option("--nv", nv, "Velocity levels")->check(CLI::Range(16, 1 << 20));
  o->add_flag("--strict", strict, "Also check both edge endpoints");
  o->add_option("--out-path", out_path, "Optimal DP path CSV");

  BatchOptions batch;
  auto* b = app.add_subcommand("batch", "Random Bezier instances under kinematic bounds");
  b->add_option("--instances", batch.instances, "Instance count");
  b->add_option("--dof", batch.dof, "Degrees of freedom")->check(CLI::Range(1, 1000));
  b->add_option("--seed", batch.seed, "Seed");
  b->add_option("--N", batch.N, "Grid size")->check(CLI::Range(8, 1 << 24));
  b->add_option("--threads", batch.threads, "Worker threads");
  b->add_option("--out", dest, "Per-instance CSV");

  double tol = 1e-6;
  bool unscaled = false;
  auto* v = app.add_subcommand("validate", "Check a profile CSV against a problem");
  v->add_option("problem", file, "Problem file")->required();
  v->add_option("--profile", profile_path, "Profile CSV")->required();
  v->add_option("--tol", tol, "Residual tolerance")->check(CLI::NonNegativeNumber);
  v->add_flag("--unscaled", unscaled, "Absolute instead of row-scaled tolerance");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*s) return cmd_solve(solve, out);
    if (*m) return cmd_mvc(file, dest, out);
    if (*w) return cmd_switch(file, dest, out);
    if (*o) return cmd_oracle(file, nv, strict, out_path, out);
    if (*b) return cmd_batch(batch, dest, out);
    if (*v) return cmd_validate(file, profile_path, tol, unscaled, out);
  } catch (const ProblemError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace topp
