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

#include "topp/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace topp {
namespace {

using nlohmann::json;

std::string at_index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}
std::string at_key(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ProblemError(path.empty() ? "<root>" : path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ProblemError(at_key(path, key), "missing required field");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ProblemError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ProblemError(path, "must be finite");
  return x;
}

double number_or(const json& obj, const std::string& key, const std::string& path,
                 double fallback) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : number(*it, at_key(path, key));
}

Vector vector_of(const json& v, const std::string& path) {
  if (!v.is_array()) throw ProblemError(path, "expected an array of numbers");
  Vector out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], at_index(path, i)));
  return out;
}

Vector positive_vector(const json& v, const std::string& path, std::size_t dof) {
  Vector out = vector_of(v, path);
  if (out.size() != dof) {
    throw ProblemError(path, "expected " + std::to_string(dof) + " entries (path dof)");
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!(out[i] > 0.0)) throw ProblemError(at_index(path, i), "must be > 0");
  }
  return out;
}

PathSpec parse_path(const json& j, const std::string& path) {
  PathSpec spec;
  if (!j.is_object()) throw ProblemError(path, "expected an object");
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) throw ProblemError(at_key(path, "kind"), "expected a string");
    spec.kind = j["kind"].get<std::string>();
  }
  auto points = [&](const json& arr, const std::string& p) {
    if (!arr.is_array()) throw ProblemError(p, "expected an array of points");
    std::vector<Vector> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out.push_back(vector_of(arr[i], at_index(p, i)));
      if (out.back().empty() || out.back().size() != out.front().size()) {
        throw ProblemError(at_index(p, i), "dimension mismatch");
      }
    }
    return out;
  };
  if (spec.kind == "cubic-spline" || spec.kind == "bezier" || spec.kind == "blended") {
    const std::string p = at_key(path, "waypoints");
    spec.waypoints = points(require(j, "waypoints", path), p);
    if (spec.waypoints.size() < 2) throw ProblemError(p, "need >= 2 waypoints");
    if (spec.kind == "blended") {
      spec.max_deviation = number_or(j, "max_deviation", path, spec.max_deviation);
      if (!(spec.max_deviation > 0.0)) {
        throw ProblemError(at_key(path, "max_deviation"), "must be > 0");
      }
    }
  } else if (spec.kind == "bezier-controls") {
    const std::string p = at_key(path, "control_points");
    const auto cps = points(require(j, "control_points", path), p);
    if (cps.size() != 4) throw ProblemError(p, "need exactly 4 control points");
    std::copy(cps.begin(), cps.end(), spec.control_points.begin());
  } else if (spec.kind == "pieces") {
    spec.knots = vector_of(require(j, "knots", path), at_key(path, "knots"));
    const json& pieces = require(j, "pieces", path);
    const std::string pp = at_key(path, "pieces");
    if (!pieces.is_array()) throw ProblemError(pp, "expected an array");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const std::string p = at_index(pp, i);
      const json& piece = pieces[i];
      const json& type = require(piece, "type", p);
      if (type == "polynomial") {
        Path::PolynomialPiece poly;
        const json& coeffs = require(piece, "coeffs", p);
        if (!coeffs.is_array()) throw ProblemError(at_key(p, "coeffs"), "expected an array");
        for (std::size_t d = 0; d < coeffs.size(); ++d) {
          poly.coeffs.push_back(vector_of(coeffs[d], at_index(at_key(p, "coeffs"), d)));
        }
        spec.pieces.emplace_back(std::move(poly));
      } else if (type == "arc") {
        Path::ArcPiece arc;
        arc.center = vector_of(require(piece, "center", p), at_key(p, "center"));
        arc.x = vector_of(require(piece, "x", p), at_key(p, "x"));
        arc.y = vector_of(require(piece, "y", p), at_key(p, "y"));
        arc.radius = number(require(piece, "radius", p), at_key(p, "radius"));
        spec.pieces.emplace_back(std::move(arc));
      } else {
        throw ProblemError(at_key(p, "type"), "expected \"polynomial\" or \"arc\"");
      }
    }
  } else {
    throw ProblemError(at_key(path, "kind"), "unknown path kind '" + spec.kind + "'");
  }
  return spec;
}

ConstraintAdapter parse_constraint(const json& j, const std::string& path,
                                   std::size_t dof, double s_end) {
  const json& type = require(j, "type", path);
  if (!type.is_string()) throw ProblemError(at_key(path, "type"), "expected a string");
  const std::string name = type.get<std::string>();
  if (name == "kinematic") {
    KinematicLimits k;
    k.qd_max = positive_vector(require(j, "qd_max", path), at_key(path, "qd_max"), dof);
    k.qdd_max = positive_vector(require(j, "qdd_max", path), at_key(path, "qdd_max"), dof);
    return k;
  }
  if (name == "planar-arm-torque") {
    if (dof != 2) throw ProblemError(at_key(path, "type"), "planar arm needs a 2-dof path");
    PlanarArmTorque t;
    if (j.contains("params")) {
      const json& p = j["params"];
      const std::string pp = at_key(path, "params");
      PlanarArm2Params& a = t.params;
      for (auto [key, ref] : {std::pair<const char*, double*>{"m1", &a.m1}, {"m2", &a.m2},
                              {"l1", &a.l1}, {"l2", &a.l2}, {"lc1", &a.lc1}, {"lc2", &a.lc2},
                              {"I1", &a.I1}, {"I2", &a.I2}, {"g0", &a.g0}}) {
        *ref = number_or(p, key, pp, *ref);
      }
      for (auto [key, v] : {std::pair<const char*, double>{"m1", a.m1}, {"m2", a.m2},
                            {"l1", a.l1}, {"l2", a.l2}}) {
        if (v < 0.0) throw ProblemError(at_key(pp, key), "must be >= 0");
      }
    }
    const Vector lo = vector_of(require(j, "tau_min", path), at_key(path, "tau_min"));
    const Vector hi = vector_of(require(j, "tau_max", path), at_key(path, "tau_max"));
    if (lo.size() != 2) throw ProblemError(at_key(path, "tau_min"), "expected 2 entries");
    if (hi.size() != 2) throw ProblemError(at_key(path, "tau_max"), "expected 2 entries");
    for (std::size_t i = 0; i < 2; ++i) {
      if (!(lo[i] < hi[i])) {
        throw ProblemError(at_index(at_key(path, "tau_min"), i), "must be < tau_max");
      }
      t.tau_min[i] = lo[i];
      t.tau_max[i] = hi[i];
    }
    return t;
  }
  if (name == "explicit-abc") {
    ExplicitRows e;
    e.s = vector_of(require(j, "s", path), at_key(path, "s"));
    const std::string sp = at_key(path, "s");
    if (e.s.size() < 2) throw ProblemError(sp, "need >= 2 samples");
    for (std::size_t i = 1; i < e.s.size(); ++i) {
      if (!(e.s[i] > e.s[i - 1])) throw ProblemError(at_index(sp, i), "must increase");
    }
    if (e.s.front() > 1e-9 * s_end || e.s.back() < s_end * (1.0 - 1e-9)) {
      throw ProblemError(sp, "must span [0, s_end]");
    }
    const json& rows = require(j, "rows", path);
    const std::string rp = at_key(path, "rows");
    if (!rows.is_array() || rows.size() != e.s.size()) {
      throw ProblemError(rp, "expected one row table per sample");
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string ri = at_index(rp, i);
      if (!rows[i].is_array()) throw ProblemError(ri, "expected an array of [a, b, c]");
      std::vector<ConstraintRow> table;
      for (std::size_t k = 0; k < rows[i].size(); ++k) {
        const Vector abc = vector_of(rows[i][k], at_index(ri, k));
        if (abc.size() != 3) throw ProblemError(at_index(ri, k), "expected [a, b, c]");
        table.push_back({abc[0], abc[1], abc[2]});
      }
      if (!e.rows.empty() && table.size() != e.rows.front().size()) {
        throw ProblemError(ri, "row count differs from the first sample");
      }
      e.rows.push_back(std::move(table));
    }
    if (j.contains("cap")) {
      e.cap = vector_of(j["cap"], at_key(path, "cap"));
      if (e.cap.size() != e.s.size()) {
        throw ProblemError(at_key(path, "cap"), "expected one cap per sample");
      }
      for (std::size_t i = 0; i < e.cap.size(); ++i) {
        if (e.cap[i] < 0.0) throw ProblemError(at_index(at_key(path, "cap"), i), "must be >= 0");
      }
    }
    return e;
  }
  throw ProblemError(at_key(path, "type"), "unknown constraint type '" + name + "'");
}

json vec(const Vector& v) { return json(v); }

json path_to_json(const PathSpec& spec) {
  json j;
  j["kind"] = spec.kind;
  if (spec.kind == "bezier-controls") {
    j["control_points"] = json::array();
    for (const Vector& p : spec.control_points) j["control_points"].push_back(vec(p));
  } else if (spec.kind == "pieces") {
    j["knots"] = vec(spec.knots);
    j["pieces"] = json::array();
    for (const Path::Piece& piece : spec.pieces) {
      if (const auto* poly = std::get_if<Path::PolynomialPiece>(&piece)) {
        j["pieces"].push_back({{"type", "polynomial"}, {"coeffs", poly->coeffs}});
      } else {
        const auto& arc = std::get<Path::ArcPiece>(piece);
        j["pieces"].push_back({{"type", "arc"},
                               {"center", arc.center},
                               {"x", arc.x},
                               {"y", arc.y},
                               {"radius", arc.radius}});
      }
    }
  } else {
    j["waypoints"] = spec.waypoints;
    if (spec.kind == "blended") j["max_deviation"] = spec.max_deviation;
  }
  return j;
}

json constraint_to_json(const ConstraintAdapter& adapter) {
  json j;
  j["type"] = adapter_name(adapter);
  if (const auto* k = std::get_if<KinematicLimits>(&adapter)) {
    j["qd_max"] = k->qd_max;
    j["qdd_max"] = k->qdd_max;
  } else if (const auto* t = std::get_if<PlanarArmTorque>(&adapter)) {
    const PlanarArm2Params& p = t->params;
    j["params"] = {{"m1", p.m1}, {"m2", p.m2}, {"l1", p.l1},   {"l2", p.l2}, {"lc1", p.lc1},
                   {"lc2", p.lc2}, {"I1", p.I1}, {"I2", p.I2}, {"g0", p.g0}};
    j["tau_min"] = {t->tau_min[0], t->tau_min[1]};
    j["tau_max"] = {t->tau_max[0], t->tau_max[1]};
  } else {
    const auto& e = std::get<ExplicitRows>(adapter);
    j["s"] = e.s;
    j["rows"] = json::array();
    for (const auto& table : e.rows) {
      json t = json::array();
      for (const ConstraintRow& r : table) t.push_back({r.a, r.b, r.c});
      j["rows"].push_back(t);
    }
    if (!e.cap.empty()) j["cap"] = e.cap;
  }
  return j;
}

}  // namespace

Path build_problem_path(const Problem& problem) {
  const PathSpec& spec = problem.path;
  if (spec.kind == "cubic-spline") return build_path(spec.waypoints, PathKind::kCubicSpline);
  if (spec.kind == "bezier") return build_path(spec.waypoints, PathKind::kBezier);
  if (spec.kind == "bezier-controls") return bezier_path(spec.control_points);
  if (spec.kind == "blended") return blended_path(spec.waypoints, spec.max_deviation);
  if (spec.kind == "pieces") return Path(spec.knots, spec.pieces);
  throw ProblemError("path.kind", "unknown path kind '" + spec.kind + "'");
}

Problem parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + upto, '\n');
    throw ProblemError("line " + std::to_string(line), e.what());
  }
  const json& version = require(j, "version", "");
  if (!version.is_number_integer() || version.get<int>() != kProblemVersion) {
    throw ProblemError("version", "unsupported version (expected " +
                                      std::to_string(kProblemVersion) + ")");
  }
  Problem problem;
  problem.path = parse_path(require(j, "path", ""), "path");
  std::size_t dof = 0;
  double s_end = 0.0;
  try {
    const Path path = build_problem_path(problem);
    dof = path.dof();
    s_end = path.s_end();
  } catch (const ProblemError&) {
    throw;
  } catch (const std::exception& e) {
    throw ProblemError("path", e.what());
  }

  const json& constraints = require(j, "constraints", "");
  if (!constraints.is_array() || constraints.empty()) {
    throw ProblemError("constraints", "expected a nonempty array");
  }
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    problem.constraints.push_back(
        parse_constraint(constraints[i], at_index("constraints", i), dof, s_end));
  }

  problem.v_beg = number_or(j, "v_beg", "", 0.0);
  problem.v_end = number_or(j, "v_end", "", 0.0);
  if (problem.v_beg < 0.0) throw ProblemError("v_beg", "must be >= 0");
  if (problem.v_end < 0.0) throw ProblemError("v_end", "must be >= 0");
  if (j.contains("N")) {
    if (!j["N"].is_number_integer() || j["N"].get<long long>() < 8) {
      throw ProblemError("N", "must be an integer >= 8");
    }
    problem.N = j["N"].get<std::size_t>();
  }
  if (j.contains("solver")) {
    const json& s = j["solver"];
    if (!s.is_object()) throw ProblemError("solver", "expected an object");
    SolverOptions& o = problem.solver;
    if (s.contains("n_escape")) {
      if (!s["n_escape"].is_number_integer() || s["n_escape"].get<long long>() < 0) {
        throw ProblemError("solver.n_escape", "must be an integer >= 0");
      }
      o.n_escape = s["n_escape"].get<std::size_t>();
    }
    if (s.contains("legacy_singularity")) {
      if (!s["legacy_singularity"].is_boolean()) {
        throw ProblemError("solver.legacy_singularity", "expected a boolean");
      }
      o.legacy_singularity = s["legacy_singularity"].get<bool>();
    }
    o.mvc.sd_max_search = number_or(s, "sd_max_search", "solver", o.mvc.sd_max_search);
    o.mvc.tolerance = number_or(s, "mvc_tolerance", "solver", o.mvc.tolerance);
    o.switches.discontinuity_threshold =
        number_or(s, "discontinuity_threshold", "solver", o.switches.discontinuity_threshold);
    if (!(o.mvc.sd_max_search > 0.0)) throw ProblemError("solver.sd_max_search", "must be > 0");
    if (!(o.mvc.tolerance > 0.0)) throw ProblemError("solver.mvc_tolerance", "must be > 0");
    o.switches.mvc = o.mvc;
  }
  return problem;
}

Problem load_problem(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw ProblemError("file", "cannot read '" + filename + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_problem(buffer.str());
}

std::string dump_problem(const Problem& problem) {
  json j;
  j["version"] = kProblemVersion;
  j["path"] = path_to_json(problem.path);
  j["constraints"] = json::array();
  for (const auto& c : problem.constraints) j["constraints"].push_back(constraint_to_json(c));
  j["v_beg"] = problem.v_beg;
  j["v_end"] = problem.v_end;
  j["N"] = problem.N;
  const SolverOptions& o = problem.solver;
  j["solver"] = {{"n_escape", o.n_escape},
                 {"legacy_singularity", o.legacy_singularity},
                 {"sd_max_search", o.mvc.sd_max_search},
                 {"mvc_tolerance", o.mvc.tolerance},
                 {"discontinuity_threshold", o.switches.discontinuity_threshold}};
  return j.dump(2);
}

ConstraintGrid discretize_problem(const Problem& problem) {
  return discretize(problem.constraints, build_problem_path(problem), problem.N);
}

std::array<double, 2> endpoint_sd(const Problem& problem, const Path& path) {
  auto convert = [&](double s, double v) {
    if (v == 0.0) return 0.0;
    const PathPoint p = path.eval(s);
    double norm = 0.0;
    for (double x : p.q_s) norm += x * x;
    if (!(norm > 0.0)) throw ProblemError("v_beg", "nonzero speed at a stationary path end");
    return v / std::sqrt(norm);
  };
  return {convert(0.0, problem.v_beg), convert(path.s_end(), problem.v_end)};
}

ParameterizationResult solve_problem(const Problem& problem) {
  const Path path = build_problem_path(problem);
  return solve_topp(path, problem.constraints, problem.v_beg, problem.v_end, problem.N,
                    problem.solver);
}

}  // namespace topp
