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

#pragma once

// Batch study drivers. Each study is deterministic given its configuration
// and produces one CSV table with a fixed column set.

#include <optional>
#include <string>
#include <vector>

#include "genalpha/dirichlet.hpp"
#include "genalpha/integrator/params.hpp"

namespace genalpha::study {

/// Configuration shared by all study kinds; each kind reads the fields it
/// needs. Unset optional values fall back to per-study defaults.
struct StudyConfig {
  std::string study;
  std::string geometry;            ///< built-in name, or empty when geometry_file is set
  std::string geometry_file;       ///< geometry JSON document
  std::vector<std::string> geometries;  ///< precond-iterations sweep
  std::vector<int> degrees;
  std::vector<int> n_sub;
  std::vector<int> k;
  std::vector<double> rho;         ///< rho_b = rho_s = rho for every block
  std::vector<double> rho_b;       ///< explicit per-block lists (single k only)
  std::vector<double> rho_s;
  integrator::BlockFormulas formulas = integrator::BlockFormulas::derived;
  std::vector<double> tau;
  std::optional<double> cfl_safety;  ///< alternative to tau for single runs
  std::optional<double> t_end;
  std::optional<int> steps;        ///< alternative to t_end: t_end = steps * tau
  std::string solution;
  double omega = 1.0;
  assembly::Damping damping;
  std::string reference = "semi-discrete";  ///< time-convergence: or "exact"
  int observe_every = 1;
  bool unsafe = false;
  double pcg_tol = 1e-12;
  int extra_points = 1;
  std::string preconditioner = "schwarz";  ///< or "jacobi"
  std::vector<int> modes;          ///< dispersion wave numbers j
  double theta_min = 0.0;
  double theta_max = 6.0;
  int theta_samples = 601;
  std::string matrix = "mass";     ///< export-matrices: mass | stiffness
  bool reduced = false;            ///< export-matrices: free unknowns only
};

/// Parses a JSON document; throws ConfigError on malformed input, unknown
/// keys, empty lists or inconsistent values.
StudyConfig parse_config(const std::string& json_text, const std::string& study);
StudyConfig load_config(const std::string& path, const std::string& study);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns = {}) : columns_(std::move(columns)) {}
  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }
  void add_row(std::vector<std::string> row);
  std::string to_string() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// Round-trip formatting of doubles for CSV cells.
std::string fmt(double v);

struct StudyResult {
  CsvTable table;
  /// Extra table written next to the main output (spectrum summary).
  std::optional<CsvTable> summary;
  /// Plain text output instead of a table (matrix and geometry export).
  std::optional<std::string> text;
  int aborted = 0;  ///< cells stopped by the CFL check or the instability detector
  std::vector<std::string> log;
};

/// Least-squares slope of log(y) against log(x) over the last `window`
/// points (points with nonpositive or nonfinite y are skipped).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, int window = 3);

/// Columns: tau, err_u_L2, err_v_L2, slope_u, slope_v, status.
StudyResult run_time_convergence(const StudyConfig& config);
/// Columns: p, n_sub, h, rel_err_L2, rel_err_v_L2, slope, status.
StudyResult run_space_convergence(const StudyConfig& config);
/// Columns: j, k, rho, tau, rel_err_L2, theta_ratio, status.
StudyResult run_dispersion(const StudyConfig& config);
/// Columns: geometry, p, n_sub, n_dof, iterations, kappa_estimate, flops_per_apply, status.
StudyResult run_precond_iterations(const StudyConfig& config);
/// Columns: k, rho, theta, rho_G, re_lambda_1, im_lambda_1, ... (3 max(k) pairs).
/// Summary: k, rho, block, theta_max, omega_b, omega_b_closed, omega_s_closed, note.
StudyResult run_spectrum(const StudyConfig& config);
/// Trajectory columns: t, L2_error_u, L2_error_v, energy.
StudyResult run_trajectory(const StudyConfig& config);
/// Matrix triplets "row col value", zero-based.
StudyResult run_export_matrices(const StudyConfig& config);
/// Geometry JSON document.
StudyResult run_export_geometry(const StudyConfig& config);

/// Dispatches on config.study; throws ConfigError for an unknown kind.
StudyResult run_study(const StudyConfig& config);
std::vector<std::string> study_kinds();

}  // namespace genalpha::study
