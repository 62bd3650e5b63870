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

#include "topp/batch.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "topp/retiming.hpp"

namespace topp {

Problem make_batch_instance(const BatchOptions& options, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                    static_cast<std::uint32_t>(options.seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> coord(-std::numbers::pi, std::numbers::pi);
  Problem p;
  p.path.kind = "bezier-controls";
  for (Vector& cp : p.path.control_points) {
    cp.resize(options.dof);
    for (double& x : cp) x = coord(rng);
  }
  p.constraints.push_back(KinematicLimits{Vector(options.dof, options.qd_max),
                                          Vector(options.dof, options.qdd_max)});
  p.N = options.N;
  p.solver = options.solver;
  return p;
}

BatchSummary run_batch(const BatchOptions& options) {
  BatchSummary summary;
  summary.instances.resize(options.instances);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < options.instances; i = next++) {
      BatchInstance& r = summary.instances[i];
      r.index = i;
      const Problem problem = make_batch_instance(options, i);
      const Path path = build_problem_path(problem);
      const auto t0 = std::chrono::steady_clock::now();
      const ParameterizationResult result =
          solve_topp(path, problem.constraints, 0.0, 0.0, problem.N, problem.solver);
      const auto t1 = std::chrono::steady_clock::now();
      r.solve_seconds = std::chrono::duration<double>(t1 - t0).count();
      r.status = result.status;
      r.reason = result.reason;
      r.duration = result.duration;
      r.singular = result.switch_points.singular_count();
      if (result.ok()) {
        const ConstraintGrid grid = discretize(problem.constraints, path, problem.N);
        ValidateOptions vo;
        vo.tolerance = options.validate_tolerance;
        vo.ceiling = &result.curves.ceiling;
        const ValidationReport report = validate(result.profile, grid, vo);
        r.valid = report.pass;
        r.max_scaled_residual = report.max_scaled_residual;
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, options.threads);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  Vector times;
  for (const BatchInstance& r : summary.instances) {
    switch (r.status) {
      case SolveStatus::kSuccess:
        ++summary.successes;
        if (!r.valid) ++summary.invalid;
        break;
      case SolveStatus::kInfeasible: ++summary.infeasible; break;
      case SolveStatus::kFailure: ++summary.failures; break;
    }
    summary.singular_total += r.singular;
    times.push_back(r.solve_seconds);
  }
  if (!times.empty()) {
    double total = 0.0;
    for (double t : times) total += t;
    summary.mean_seconds = total / static_cast<double>(times.size());
    std::sort(times.begin(), times.end());
    const std::size_t h = times.size() / 2;
    summary.median_seconds =
        times.size() % 2 == 1 ? times[h] : 0.5 * (times[h - 1] + times[h]);
  }
  return summary;
}

std::string BatchSummary::deterministic_text() const {
  std::ostringstream os;
  os.precision(12);
  os << "instances " << instances.size() << "\n"
     << "successes " << successes << "\n"
     << "infeasible " << infeasible << "\n"
     << "failures " << failures << "\n"
     << "invalid " << invalid << "\n"
     << "singular_switch_points " << singular_total << "\n";
  double total = 0.0;
  for (const BatchInstance& r : instances) total += r.status == SolveStatus::kSuccess ? r.duration : 0.0;
  os << "total_duration " << total << "\n";
  for (const BatchInstance& r : instances) {
    if (r.status != SolveStatus::kSuccess) {
      os << "instance " << r.index << " " << status_name(r.status) << ": " << r.reason << "\n";
    }
  }
  return os.str();
}

std::string BatchSummary::text() const {
  std::ostringstream os;
  os << deterministic_text();
  os.precision(6);
  os << "mean_solve_seconds " << mean_seconds << "\n"
     << "median_solve_seconds " << median_seconds << "\n";
  return os.str();
}

}  // namespace topp
