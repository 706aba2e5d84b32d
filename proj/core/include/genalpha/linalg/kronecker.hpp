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

// Kronecker products of banded SPD factors, applied and inverted by mode
// sweeps over the reshaped vector. The first factor acts on the fastest index.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "genalpha/linalg/banded.hpp"

namespace genalpha::linalg {

class KroneckerOperator {
 public:
  KroneckerOperator() = default;
  /// d = factors.size() in 1..3. Factors are Cholesky-factorized eagerly.
  explicit KroneckerOperator(std::vector<BandedSymmetric> factors);

  int dim() const noexcept { return static_cast<int>(factors_.size()); }
  std::size_t size() const noexcept { return size_; }
  const BandedSymmetric& factor(int k) const { return factors_[static_cast<std::size_t>(k)]; }

  /// y = (A_{d-1} x ... x A_0) x. `x` and `y` must not alias.
  void apply(std::span<const double> x, std::span<double> y) const;
  /// x <- (A_{d-1} x ... x A_0)^{-1} x, d sweeps of banded triangular solves.
  void solve_in_place(std::span<double> x) const;
  /// Operations performed by one solve_in_place.
  std::uint64_t solve_flops() const noexcept { return solve_flops_; }

  /// Row-major dense Kronecker matrix (small sizes only; used as an oracle).
  std::vector<double> to_dense() const;

 private:
  std::vector<BandedSymmetric> factors_;
  std::vector<BandedCholesky> chol_;
  std::array<int, 3> shape_{1, 1, 1};
  std::size_t size_ = 1;
  std::uint64_t solve_flops_ = 0;
};

}  // namespace genalpha::linalg
