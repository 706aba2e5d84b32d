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

// Preconditioned conjugate gradients on abstract SPD operators.

#include <functional>
#include <span>
#include <vector>

namespace genalpha::linalg {

/// out = Op(in); `in` and `out` never alias.
using LinearOperator = std::function<void(std::span<const double> in, std::span<double> out)>;

struct PcgOptions {
  double rel_tol = 1e-12;
  int max_iter = 1000;
  /// The recursively updated residual is replaced by b - A x this often.
  int true_residual_interval = 50;
  bool record_history = false;
  /// Estimate the extreme eigenvalues of P^{-1}A from the CG coefficients.
  bool estimate_condition = false;
};

struct PcgReport {
  int iterations = 0;
  double rel_residual = 0.0;  ///< true ||b - A x|| / ||b|| at exit
  bool converged = false;
  bool breakdown = false;     ///< p^T A p <= 0 or r^T z <= 0 encountered
  std::vector<double> history;  ///< relative residual per iteration, if recorded
  double lambda_min = 0.0;    ///< Lanczos estimates, if requested
  double lambda_max = 0.0;
  double condition_estimate() const { return lambda_min > 0.0 ? lambda_max / lambda_min : 0.0; }
};

/// Solves A x = b starting from x = 0. The result overwrites `x`.
/// Never throws on non-convergence; callers inspect the report.
PcgReport pcg(const LinearOperator& apply_a, const LinearOperator& apply_pinv, std::span<const double> b,
              std::span<double> x, const PcgOptions& options = {});

/// Extreme eigenvalues of a symmetric tridiagonal matrix.
std::pair<double, double> tridiagonal_extremes(std::span<const double> diag, std::span<const double> offdiag);

}  // namespace genalpha::linalg
