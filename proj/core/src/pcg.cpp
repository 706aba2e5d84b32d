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

#include "genalpha/linalg/pcg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "genalpha/error.hpp"
#include "genalpha/linalg/sparse.hpp"

namespace genalpha::linalg {

std::pair<double, double> tridiagonal_extremes(std::span<const double> diag, std::span<const double> offdiag) {
  const auto n = static_cast<Eigen::Index>(diag.size());
  if (n == 0) return {0.0, 0.0};
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), n);
  Eigen::VectorXd e(std::max<Eigen::Index>(n - 1, 0));
  for (Eigen::Index i = 0; i + 1 < n; ++i) e[i] = offdiag[static_cast<std::size_t>(i)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

PcgReport pcg(const LinearOperator& apply_a, const LinearOperator& apply_pinv, std::span<const double> b,
              std::span<double> x, const PcgOptions& opt) {
  const std::size_t n = b.size();
  if (x.size() != n) throw UsageError("pcg: size mismatch");
  PcgReport rep;
  std::fill(x.begin(), x.end(), 0.0);
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    rep.converged = true;
    return rep;
  }
  std::vector<double> r(b.begin(), b.end());
  std::vector<double> z(n), p(n), q(n);
  apply_pinv(r, z);
  p = z;
  double rz = dot(r, z);
  std::vector<double> lanczos_d, lanczos_e;
  double alpha_prev = 0.0;
  double beta_prev = 0.0;

  auto true_residual = [&] {
    apply_a(x, q);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - q[i];
    return norm2(r) / bnorm;
  };

  double rel = 1.0;
  for (int it = 1; it <= opt.max_iter; ++it) {
    if (!(rz > 0.0)) {
      rep.breakdown = true;
      break;
    }
    apply_a(p, q);
    const double pq = dot(p, q);
    if (!(pq > 0.0)) {
      rep.breakdown = true;
      break;
    }
    const double alpha = rz / pq;
    axpy(alpha, p, x);
    axpy(-alpha, q, r);
    rep.iterations = it;

    if (opt.estimate_condition) {
      lanczos_d.push_back(1.0 / alpha + (alpha_prev > 0.0 ? beta_prev / alpha_prev : 0.0));
    }

    if (opt.true_residual_interval > 0 && it % opt.true_residual_interval == 0) {
      rel = true_residual();
    } else {
      rel = norm2(r) / bnorm;
    }
    if (opt.record_history) rep.history.push_back(rel);
    if (rel <= opt.rel_tol) {
      rel = true_residual();
      if (rel <= opt.rel_tol) {
        rep.converged = true;
        break;
      }
    }
    apply_pinv(r, z);
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    if (opt.estimate_condition) lanczos_e.push_back(std::sqrt(std::max(beta, 0.0)) / alpha);
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    alpha_prev = alpha;
    beta_prev = beta;
  }
  if (!rep.converged) rel = true_residual();
  rep.rel_residual = rel;
  if (opt.estimate_condition && !lanczos_d.empty()) {
    lanczos_e.resize(lanczos_d.size() - 1);
    std::tie(rep.lambda_min, rep.lambda_max) = tridiagonal_extremes(lanczos_d, lanczos_e);
  }
  return rep;
}

}  // namespace genalpha::linalg
