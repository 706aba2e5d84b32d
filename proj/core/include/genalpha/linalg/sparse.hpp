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

// Compressed-row sparse matrices.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace genalpha::linalg {

struct Triplet {
  int row;
  int col;
  double value;
};

/// CSR matrix with sorted, unique column indices per row.
class CsrMatrix {
 public:
  CsrMatrix() = default;
  CsrMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_ptr_(static_cast<std::size_t>(rows) + 1, 0) {}

  /// Duplicates are summed; entries that sum to exactly zero are kept so the
  /// pattern reflects overlap of supports.
  static CsrMatrix from_triplets(int rows, int cols, std::vector<Triplet> triplets);
  static CsrMatrix identity(int n);
  static CsrMatrix diagonal(std::span<const double> d);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const int> row_ptr() const noexcept { return row_ptr_; }
  std::span<const int> col_idx() const noexcept { return col_idx_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  /// Entry lookup by binary search; 0 when absent.
  double coeff(int i, int j) const;

  /// y = A x.
  void multiply(std::span<const double> x, std::span<double> y) const;
  /// y += a * A x.
  void multiply_add(double a, std::span<const double> x, std::span<double> y) const;
  std::vector<double> operator*(std::span<const double> x) const;

  std::vector<double> diagonal() const;
  CsrMatrix transpose() const;
  /// Rows `r` and columns `c` (given as index lists) of this matrix.
  CsrMatrix submatrix(std::span<const int> r, std::span<const int> c) const;
  /// this + s * other; patterns are merged.
  CsrMatrix add(const CsrMatrix& other, double s) const;
  CsrMatrix scaled(double s) const;

  /// Largest |A_ij - A_ji|.
  double asymmetry() const;
  /// Row-major dense copy (intended for small matrices in diagnostics and tests).
  std::vector<double> to_dense() const;

  /// One `row col value` line per stored entry, zero-based indices.
  void write_triplets(std::ostream& os) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
/// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);

}  // namespace genalpha::linalg
