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

#include "genalpha/dirichlet.hpp"

#include "genalpha/error.hpp"

namespace genalpha::assembly {

using linalg::CsrMatrix;

namespace {

CsrMatrix damping_matrix(const CsrMatrix& m, const CsrMatrix& k, const Damping& d) {
  if (d.zero()) return CsrMatrix(m.rows(), m.cols());
  return m.scaled(d.a0).add(k, d.a1);
}

}  // namespace

SemiDiscreteSystem make_system(CsrMatrix M, CsrMatrix K, Damping damping, double omega) {
  if (M.rows() != M.cols() || K.rows() != M.rows() || K.cols() != M.cols()) {
    throw UsageError("make_system: M and K must be square and of equal size");
  }
  SemiDiscreteSystem s;
  const int n = M.rows();
  s.C = damping_matrix(M, K, damping);
  s.M = std::move(M);
  s.K = std::move(K);
  s.M_fb = s.K_fb = s.C_fb = CsrMatrix(n, 0);
  for (int i = 0; i < n; ++i) {
    s.free_dofs.push_back(i);
    s.free_index.push_back(i);
  }
  s.omega = omega;
  s.damping = damping;
  return s;
}

SemiDiscreteSystem apply_dirichlet(const GlobalMatrices& g, const std::vector<int>& boundary, double omega,
                                   Damping damping) {
  const int n = g.mass.rows();
  SemiDiscreteSystem s;
  s.free_index.assign(n, 0);
  for (int b : boundary) {
    if (b < 0 || b >= n) throw UsageError("apply_dirichlet: boundary index out of range");
    s.free_index[b] = -1;
  }
  for (int i = 0; i < n; ++i) {
    if (s.free_index[i] < 0) {
      s.boundary_dofs.push_back(i);
    } else {
      s.free_index[i] = static_cast<int>(s.free_dofs.size());
      s.free_dofs.push_back(i);
    }
  }
  s.M = g.mass.submatrix(s.free_dofs, s.free_dofs);
  s.K = g.stiffness.submatrix(s.free_dofs, s.free_dofs);
  s.C = damping_matrix(s.M, s.K, damping);
  s.M_fb = g.mass.submatrix(s.free_dofs, s.boundary_dofs);
  s.K_fb = g.stiffness.submatrix(s.free_dofs, s.boundary_dofs);
  s.C_fb = damping.zero() ? CsrMatrix(s.M_fb.rows(), s.M_fb.cols()) : damping_matrix(s.M_fb, s.K_fb, damping);
  s.omega = omega;
  s.damping = damping;
  return s;
}

std::vector<double> restrict_to_free(const SemiDiscreteSystem& s, std::span<const double> global) {
  std::vector<double> out(s.free_dofs.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = global[s.free_dofs[i]];
  return out;
}

std::vector<double> expand(const SemiDiscreteSystem& s, std::span<const double> free_values,
                           std::span<const double> boundary_values) {
  std::vector<double> out(s.free_index.size(), 0.0);
  for (std::size_t i = 0; i < s.free_dofs.size(); ++i) out[s.free_dofs[i]] = free_values[i];
  for (std::size_t i = 0; i < s.boundary_dofs.size() && i < boundary_values.size(); ++i) {
    out[s.boundary_dofs[i]] = boundary_values[i];
  }
  return out;
}

}  // namespace genalpha::assembly
