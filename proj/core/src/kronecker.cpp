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

#include "genalpha/linalg/kronecker.hpp"

#include "genalpha/error.hpp"

namespace genalpha::linalg {
namespace {

// Visits every mode-k line: calls f(base pointer offset, stride).
template <class F>
void for_each_line(const std::array<int, 3>& shape, int k, F&& f) {
  std::ptrdiff_t stride = 1;
  for (int q = 0; q < k; ++q) stride *= shape[static_cast<std::size_t>(q)];
  const std::ptrdiff_t n = shape[static_cast<std::size_t>(k)];
  const std::ptrdiff_t outer = static_cast<std::ptrdiff_t>(shape[0]) * shape[1] * shape[2] / (n * stride);
  for (std::ptrdiff_t o = 0; o < outer; ++o) {
    for (std::ptrdiff_t s = 0; s < stride; ++s) f(o * n * stride + s, stride);
  }
}

}  // namespace

KroneckerOperator::KroneckerOperator(std::vector<BandedSymmetric> factors) : factors_(std::move(factors)) {
  if (factors_.empty() || factors_.size() > 3) throw UsageError("Kronecker operator: need 1 to 3 factors");
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    chol_.emplace_back(factors_[k]);
    shape_[k] = factors_[k].size();
    size_ *= static_cast<std::size_t>(shape_[k]);
  }
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    solve_flops_ += chol_[k].solve_flops() * (size_ / static_cast<std::size_t>(shape_[k]));
  }
}

void KroneckerOperator::apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != size_ || y.size() != size_) throw UsageError("Kronecker apply: size mismatch");
  std::vector<double> a(x.begin(), x.end());
  std::vector<double> b(size_);
  for (int k = 0; k < dim(); ++k) {
    for_each_line(shape_, k, [&](std::ptrdiff_t off, std::ptrdiff_t stride) {
      factors_[static_cast<std::size_t>(k)].multiply(a.data() + off, b.data() + off, stride);
    });
    a.swap(b);
  }
  std::copy(a.begin(), a.end(), y.begin());
}

void KroneckerOperator::solve_in_place(std::span<double> x) const {
  if (x.size() != size_) throw UsageError("Kronecker solve: size mismatch");
  for (int k = 0; k < dim(); ++k) {
    const auto& c = chol_[static_cast<std::size_t>(k)];
    for_each_line(shape_, k, [&](std::ptrdiff_t off, std::ptrdiff_t stride) { c.solve(x.data() + off, stride); });
  }
}

std::vector<double> KroneckerOperator::to_dense() const {
  const std::size_t n = size_;
  std::vector<double> d(n * n, 0.0);
  std::vector<double> e(n, 0.0);
  std::vector<double> col(n);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    apply(e, col);
    e[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i) d[i * n + j] = col[i];
  }
  return d;
}

}  // namespace genalpha::linalg
