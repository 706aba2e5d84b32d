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

#include "genalpha/linalg/banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "genalpha/error.hpp"

namespace genalpha::linalg {

BandedSymmetric::BandedSymmetric(int n, int bandwidth)
    : n_(n), b_(bandwidth), band_(static_cast<std::size_t>(n) * static_cast<std::size_t>(bandwidth + 1), 0.0) {
  if (n < 0 || bandwidth < 0) throw UsageError("banded matrix: negative size");
}

BandedSymmetric BandedSymmetric::from_dense(int n, int bandwidth, std::span<const double> dense) {
  BandedSymmetric a(n, bandwidth);
  for (int i = 0; i < n; ++i) {
    for (int j = std::max(0, i - bandwidth); j <= i; ++j) a.at(i, j) = dense[static_cast<std::size_t>(i * n + j)];
  }
  return a;
}

double& BandedSymmetric::at(int i, int j) {
  if (j > i) std::swap(i, j);
  return band_[static_cast<std::size_t>(i * (b_ + 1) + (j - i + b_))];
}

double BandedSymmetric::at(int i, int j) const {
  if (j > i) std::swap(i, j);
  if (i - j > b_) return 0.0;
  return band_[static_cast<std::size_t>(i * (b_ + 1) + (j - i + b_))];
}

void BandedSymmetric::multiply(const double* x, double* y, std::ptrdiff_t stride) const {
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    const int lo = std::max(0, i - b_);
    const int hi = std::min(n_ - 1, i + b_);
    for (int j = lo; j <= hi; ++j) s += at(i, j) * x[j * stride];
    y[i * stride] = s;
  }
}

BandedSymmetric BandedSymmetric::slice(int lo, int hi) const {
  BandedSymmetric s(hi - lo, b_);
  for (int i = lo; i < hi; ++i) {
    for (int j = std::max(lo, i - b_); j <= i; ++j) s.at(i - lo, j - lo) = at(i, j);
  }
  return s;
}

std::vector<double> BandedSymmetric::to_dense() const {
  std::vector<double> d(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0.0);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) d[static_cast<std::size_t>(i * n_ + j)] = at(i, j);
  }
  return d;
}

BandedCholesky::BandedCholesky(const BandedSymmetric& a) : l_(a) {
  const int n = l_.n_;
  const int b = l_.b_;
  for (int j = 0; j < n; ++j) {
    double d = l_.at(j, j);
    for (int q = std::max(0, j - b); q < j; ++q) d -= l_.at(j, q) * l_.at(j, q);
    if (!(d > 0.0)) {
      throw FactorizationError("banded Cholesky: nonpositive pivot at row " + std::to_string(j));
    }
    d = std::sqrt(d);
    l_.at(j, j) = d;
    for (int i = j + 1; i <= std::min(n - 1, j + b); ++i) {
      double s = l_.at(i, j);
      for (int q = std::max(0, i - b); q < j; ++q) s -= l_.at(i, q) * l_.at(j, q);
      l_.at(i, j) = s / d;
    }
  }
  for (int i = 0; i < n; ++i) flops_ += 2 * (2 * static_cast<std::uint64_t>(std::min(i, b)) + 1);
}

void BandedCholesky::solve(double* x, std::ptrdiff_t stride) const {
  const int n = l_.n_;
  const int b = l_.b_;
  const double* band = l_.band_.data();
  const int w = b + 1;
  // L y = x
  for (int i = 0; i < n; ++i) {
    double s = x[i * stride];
    const double* row = band + i * w + b - i;  // row[j] = L(i, j)
    for (int j = std::max(0, i - b); j < i; ++j) s -= row[j] * x[j * stride];
    x[i * stride] = s / row[i];
  }
  // L^T x = y
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i * stride];
    for (int j = i + 1; j <= std::min(n - 1, i + b); ++j) s -= band[j * w + b - j + i] * x[j * stride];
    x[i * stride] = s / band[i * w + b];
  }
}

}  // namespace genalpha::linalg
