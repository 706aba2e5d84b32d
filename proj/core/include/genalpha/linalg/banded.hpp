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

// Symmetric banded matrices with in-place Cholesky factorization.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace genalpha::linalg {

/// Symmetric n x n matrix with half-bandwidth b, lower band stored row-wise.
class BandedSymmetric {
 public:
  BandedSymmetric() = default;
  BandedSymmetric(int n, int bandwidth);

  /// Copies the lower band of a row-major dense symmetric matrix.
  static BandedSymmetric from_dense(int n, int bandwidth, std::span<const double> dense);

  int size() const noexcept { return n_; }
  int bandwidth() const noexcept { return b_; }

  /// Entry (i, j), |i - j| <= b; symmetric access.
  double& at(int i, int j);
  double at(int i, int j) const;

  /// y = A x for strided vectors: x[offset + stride * i].
  void multiply(const double* x, double* y, std::ptrdiff_t stride) const;

  /// Principal submatrix of rows/columns [lo, hi).
  BandedSymmetric slice(int lo, int hi) const;
  std::vector<double> to_dense() const;

 private:
  friend class BandedCholesky;
  int n_ = 0;
  int b_ = 0;
  std::vector<double> band_;  // band_[i * (b+1) + (j - i + b)], i - b <= j <= i
};

/// A = L L^T. Throws FactorizationError on a nonpositive pivot.
class BandedCholesky {
 public:
  BandedCholesky() = default;
  explicit BandedCholesky(const BandedSymmetric& a);

  int size() const noexcept { return l_.n_; }
  /// Solves A x = b in place on a strided vector.
  void solve(double* x, std::ptrdiff_t stride) const;
  void solve(std::span<double> x) const { solve(x.data(), 1); }
  /// Floating-point operations of one solve (multiplies, adds, divides).
  std::uint64_t solve_flops() const noexcept { return flops_; }

 private:
  BandedSymmetric l_;
  std::uint64_t flops_ = 0;
};

}  // namespace genalpha::linalg
