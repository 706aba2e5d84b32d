// Copyright 2026 The genalpha Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <set>
#include <sstream>

#include "genalpha/error.hpp"
#include "genalpha/study.hpp"
#include "json.hpp"

namespace genalpha::study {

namespace {

using nlohmann::json;

const std::set<std::string> kKeys = {
    "study",     "geometry",      "geometry_file", "geometries", "degrees",     "p",
    "n_sub",     "k",             "rho",           "rho_b",      "rho_s",       "formulas",
    "tau",       "cfl_safety",    "T",             "t_end",      "steps",       "solution",
    "omega",     "damping",       "reference",     "observe_every", "unsafe",   "pcg_tol",
    "extra_points", "preconditioner", "modes",     "theta_min",  "theta_max",   "theta_samples",
    "matrix",    "reduced"};

// Scalar or list of scalars.
template <class T>
std::vector<T> list(const json& j, const std::string& key) {
  std::vector<T> out;
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(e.get<T>());
  } else {
    out.push_back(j.get<T>());
  }
  if (out.empty()) throw ConfigError("'" + key + "' must not be empty");
  return out;
}

void check_rho(const std::vector<double>& v, const std::string& key) {
  for (double r : v) {
    if (!(r >= 0.0 && r < 1.0)) throw ConfigError("'" + key + "' values must lie in [0, 1)");
  }
}

}  // namespace

StudyConfig parse_config(const std::string& text, const std::string& study) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!kKeys.count(key)) throw ConfigError("unknown configuration key '" + key + "'");
  }
  StudyConfig c;
  c.study = study;
  try {
    if (j.contains("study")) {
      const auto s = j["study"].get<std::string>();
      if (!study.empty() && s != study) throw ConfigError("config is for study '" + s + "', not '" + study + "'");
      c.study = s;
    }
    if (j.contains("geometry")) {
      if (j["geometry"].is_array()) {
        c.geometries = list<std::string>(j["geometry"], "geometry");
      } else {
        c.geometry = j["geometry"].get<std::string>();
      }
    }
    if (j.contains("geometries")) c.geometries = list<std::string>(j["geometries"], "geometries");
    if (j.contains("geometry_file")) c.geometry_file = j["geometry_file"].get<std::string>();
    if (j.contains("degrees")) c.degrees = list<int>(j["degrees"], "degrees");
    if (j.contains("p")) c.degrees = list<int>(j["p"], "p");
    if (j.contains("n_sub")) c.n_sub = list<int>(j["n_sub"], "n_sub");
    if (j.contains("k")) c.k = list<int>(j["k"], "k");
    if (j.contains("rho")) c.rho = list<double>(j["rho"], "rho");
    if (j.contains("rho_b")) c.rho_b = list<double>(j["rho_b"], "rho_b");
    if (j.contains("rho_s")) c.rho_s = list<double>(j["rho_s"], "rho_s");
    if (j.contains("formulas")) {
      const auto f = j["formulas"].get<std::string>();
      if (f == "derived") {
        c.formulas = integrator::BlockFormulas::derived;
      } else if (f == "published") {
        c.formulas = integrator::BlockFormulas::published;
      } else {
        throw ConfigError("'formulas' must be 'derived' or 'published'");
      }
    }
    if (j.contains("tau")) c.tau = list<double>(j["tau"], "tau");
    if (j.contains("cfl_safety")) c.cfl_safety = j["cfl_safety"].get<double>();
    if (j.contains("T")) c.t_end = j["T"].get<double>();
    if (j.contains("t_end")) c.t_end = j["t_end"].get<double>();
    if (j.contains("steps")) c.steps = j["steps"].get<int>();
    if (j.contains("solution")) c.solution = j["solution"].get<std::string>();
    if (j.contains("omega")) c.omega = j["omega"].get<double>();
    if (j.contains("damping")) {
      const auto& d = j["damping"];
      if (!d.is_array() || d.size() != 2) throw ConfigError("'damping' must be [a0, a1]");
      c.damping = {d[0].get<double>(), d[1].get<double>()};
    }
    if (j.contains("reference")) c.reference = j["reference"].get<std::string>();
    if (j.contains("observe_every")) c.observe_every = j["observe_every"].get<int>();
    if (j.contains("unsafe")) c.unsafe = j["unsafe"].get<bool>();
    if (j.contains("pcg_tol")) c.pcg_tol = j["pcg_tol"].get<double>();
    if (j.contains("extra_points")) c.extra_points = j["extra_points"].get<int>();
    if (j.contains("preconditioner")) c.preconditioner = j["preconditioner"].get<std::string>();
    if (j.contains("modes")) c.modes = list<int>(j["modes"], "modes");
    if (j.contains("theta_min")) c.theta_min = j["theta_min"].get<double>();
    if (j.contains("theta_max")) c.theta_max = j["theta_max"].get<double>();
    if (j.contains("theta_samples")) c.theta_samples = j["theta_samples"].get<int>();
    if (j.contains("matrix")) c.matrix = j["matrix"].get<std::string>();
    if (j.contains("reduced")) c.reduced = j["reduced"].get<bool>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value type: ") + e.what());
  }

  for (int p : c.degrees) {
    if (p < 1) throw ConfigError("degrees must be positive");
  }
  for (int n : c.n_sub) {
    if (n < 1) throw ConfigError("n_sub must be positive");
  }
  for (int k : c.k) {
    if (k < 1 || k > 8) throw ConfigError("k must lie in 1..8");
  }
  for (int m : c.modes) {
    if (m < 1) throw ConfigError("modes must be positive");
  }
  check_rho(c.rho, "rho");
  check_rho(c.rho_b, "rho_b");
  check_rho(c.rho_s, "rho_s");
  if (c.rho_b.size() != c.rho_s.size()) throw ConfigError("'rho_b' and 'rho_s' must have the same length");
  for (double t : c.tau) {
    if (!(t > 0.0)) throw ConfigError("tau must be positive");
  }
  if (c.cfl_safety && !(*c.cfl_safety > 0.0 && *c.cfl_safety <= 1.0)) {
    throw ConfigError("cfl_safety must lie in (0, 1]");
  }
  if (c.t_end && !(*c.t_end > 0.0)) throw ConfigError("T must be positive");
  if (c.steps && *c.steps < 1) throw ConfigError("steps must be positive");
  if (!(c.omega > 0.0)) throw ConfigError("omega must be positive");
  if (c.reference != "semi-discrete" && c.reference != "exact") {
    throw ConfigError("'reference' must be 'semi-discrete' or 'exact'");
  }
  if (c.observe_every < 0) throw ConfigError("observe_every must be nonnegative");
  if (!(c.pcg_tol > 0.0 && c.pcg_tol < 1.0)) throw ConfigError("pcg_tol must lie in (0, 1)");
  if (c.extra_points < 0) throw ConfigError("extra_points must be nonnegative");
  if (c.preconditioner != "schwarz" && c.preconditioner != "jacobi") {
    throw ConfigError("'preconditioner' must be 'schwarz' or 'jacobi'");
  }
  if (!(c.theta_max > c.theta_min) || c.theta_min < 0.0) throw ConfigError("need 0 <= theta_min < theta_max");
  if (c.theta_samples < 2) throw ConfigError("theta_samples must be at least 2");
  if (c.matrix != "mass" && c.matrix != "stiffness") throw ConfigError("'matrix' must be 'mass' or 'stiffness'");
  return c;
}

StudyConfig load_config(const std::string& path, const std::string& study) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), study);
}

}  // namespace genalpha::study
