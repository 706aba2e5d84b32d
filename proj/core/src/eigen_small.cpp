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

#include "genalpha/linalg/eigen_small.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "genalpha/error.hpp"

namespace genalpha::linalg {

std::vector<Complex> eigenvalues(std::span<const double> a, int n) {
  if (a.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw UsageError("eigenvalues: matrix size mismatch");
  }
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = a[static_cast<std::size_t>(i * n + j)];
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  if (es.info() != Eigen::Success) throw ConvergenceError("eigenvalues: QR iteration did not converge");
  std::vector<Complex> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()[i];
  // Symmetrize conjugate pairs so downstream magnitudes agree bit-for-bit.
  for (std::size_t i = 0; i + 1 < out.size(); ++i) {
    if (out[i].imag() != 0.0 && out[i + 1].imag() == -out[i].imag()) {
      if (out[i].imag() < 0.0) std::swap(out[i], out[i + 1]);
      ++i;
    }
  }
  return out;
}

std::array<Complex, 3> eigenvalues3(const Mat3& a) {
  const auto v = eigenvalues(a, 3);
  return {v[0], v[1], v[2]};
}

std::vector<Complex> block_triangular_eigenvalues(std::span<const double> a, int n, int block) {
  if (block <= 0 || n % block != 0) throw UsageError("block_triangular_eigenvalues: bad block size");
  std::vector<Complex> out;
  std::vector<double> sub(static_cast<std::size_t>(block * block));
  for (int b0 = 0; b0 < n; b0 += block) {
    for (int i = 0; i < block; ++i) {
      for (int j = 0; j < block; ++j) {
        sub[static_cast<std::size_t>(i * block + j)] = a[static_cast<std::size_t>((b0 + i) * n + b0 + j)];
      }
    }
    const auto e = eigenvalues(sub, block);
    out.insert(out.end(), e.begin(), e.end());
  }
  return out;
}

double spectral_radius(std::span<const Complex> eigs) {
  double r = 0.0;
  for (const auto& l : eigs) r = std::max(r, std::abs(l));
  return r;
}

}  // namespace genalpha::linalg
