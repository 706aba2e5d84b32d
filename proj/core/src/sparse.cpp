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

#include "genalpha/linalg/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "genalpha/error.hpp"
#include "genalpha/parallel.hpp"

namespace genalpha::linalg {

CsrMatrix CsrMatrix::from_triplets(int rows, int cols, std::vector<Triplet> triplets) {
  for (const auto& t : triplets) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
      throw UsageError("triplet (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                       ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
    }
  }
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  CsrMatrix m(rows, cols);
  m.col_idx_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  std::size_t i = 0;
  while (i < triplets.size()) {
    const int r = triplets[i].row;
    const int c = triplets[i].col;
    double v = 0.0;
    for (; i < triplets.size() && triplets[i].row == r && triplets[i].col == c; ++i) v += triplets[i].value;
    m.col_idx_.push_back(c);
    m.values_.push_back(v);
    ++m.row_ptr_[static_cast<std::size_t>(r) + 1];
  }
  for (std::size_t r = 0; r < static_cast<std::size_t>(rows); ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
  return m;
}

CsrMatrix CsrMatrix::identity(int n) {
  std::vector<double> one(static_cast<std::size_t>(n), 1.0);
  return diagonal(one);
}

CsrMatrix CsrMatrix::diagonal(std::span<const double> d) {
  const int n = static_cast<int>(d.size());
  CsrMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m.col_idx_.push_back(i);
    m.values_.push_back(d[static_cast<std::size_t>(i)]);
    m.row_ptr_[static_cast<std::size_t>(i) + 1] = i + 1;
  }
  return m;
}

double CsrMatrix::coeff(int i, int j) const {
  const auto b = col_idx_.begin() + row_ptr_[static_cast<std::size_t>(i)];
  const auto e = col_idx_.begin() + row_ptr_[static_cast<std::size_t>(i) + 1];
  const auto it = std::lower_bound(b, e, j);
  if (it == e || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  parallel_for(rows_, [&](int i) {
    double s = 0.0;
    for (int q = row_ptr_[static_cast<std::size_t>(i)]; q < row_ptr_[static_cast<std::size_t>(i) + 1]; ++q) {
      s += values_[static_cast<std::size_t>(q)] * x[static_cast<std::size_t>(col_idx_[static_cast<std::size_t>(q)])];
    }
    y[static_cast<std::size_t>(i)] = s;
  });
}

void CsrMatrix::multiply_add(double a, std::span<const double> x, std::span<double> y) const {
  parallel_for(rows_, [&](int i) {
    double s = 0.0;
    for (int q = row_ptr_[static_cast<std::size_t>(i)]; q < row_ptr_[static_cast<std::size_t>(i) + 1]; ++q) {
      s += values_[static_cast<std::size_t>(q)] * x[static_cast<std::size_t>(col_idx_[static_cast<std::size_t>(q)])];
    }
    y[static_cast<std::size_t>(i)] += a * s;
  });
}

std::vector<double> CsrMatrix::operator*(std::span<const double> x) const {
  std::vector<double> y(static_cast<std::size_t>(rows_));
  multiply(x, y);
  return y;
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(static_cast<std::size_t>(std::min(rows_, cols_)), 0.0);
  for (int i = 0; i < static_cast<int>(d.size()); ++i) d[static_cast<std::size_t>(i)] = coeff(i, i);
  return d;
}

CsrMatrix CsrMatrix::transpose() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (int i = 0; i < rows_; ++i) {
    for (int q = row_ptr_[static_cast<std::size_t>(i)]; q < row_ptr_[static_cast<std::size_t>(i) + 1]; ++q) {
      t.push_back({col_idx_[static_cast<std::size_t>(q)], i, values_[static_cast<std::size_t>(q)]});
    }
  }
  return from_triplets(cols_, rows_, std::move(t));
}

CsrMatrix CsrMatrix::submatrix(std::span<const int> r, std::span<const int> c) const {
  std::vector<int> col_map(static_cast<std::size_t>(cols_), -1);
  for (std::size_t j = 0; j < c.size(); ++j) col_map[static_cast<std::size_t>(c[j])] = static_cast<int>(j);
  CsrMatrix m(static_cast<int>(r.size()), static_cast<int>(c.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto src = static_cast<std::size_t>(r[i]);
    std::vector<std::pair<int, double>> row;
    for (int q = row_ptr_[src]; q < row_ptr_[src + 1]; ++q) {
      const int j = col_map[static_cast<std::size_t>(col_idx_[static_cast<std::size_t>(q)])];
      if (j >= 0) row.emplace_back(j, values_[static_cast<std::size_t>(q)]);
    }
    std::sort(row.begin(), row.end());
    for (const auto& [j, v] : row) {
      m.col_idx_.push_back(j);
      m.values_.push_back(v);
    }
    m.row_ptr_[i + 1] = static_cast<int>(m.col_idx_.size());
  }
  return m;
}

CsrMatrix CsrMatrix::add(const CsrMatrix& other, double s) const {
  if (other.rows_ != rows_ || other.cols_ != cols_) throw UsageError("CsrMatrix::add: shape mismatch");
  std::vector<Triplet> t;
  t.reserve(nnz() + other.nnz());
  for (int i = 0; i < rows_; ++i) {
    for (int q = row_ptr_[static_cast<std::size_t>(i)]; q < row_ptr_[static_cast<std::size_t>(i) + 1]; ++q) {
      t.push_back({i, col_idx_[static_cast<std::size_t>(q)], values_[static_cast<std::size_t>(q)]});
    }
    for (int q = other.row_ptr_[static_cast<std::size_t>(i)]; q < other.row_ptr_[static_cast<std::size_t>(i) + 1]; ++q) {
      t.push_back({i, other.col_idx_[static_cast<std::size_t>(q)], s * other.values_[static_cast<std::size_t>(q)]});
    }
  }
  return from_triplets(rows_, cols_, std::move(t));
}

CsrMatrix CsrMatrix::scaled(double s) const {
  CsrMatrix m = *this;
  for (double& v : m.values_) v *= s;
  return m;
}

double CsrMatrix::asymmetry() const {
  double worst = 0.0;
  for (int i = 0; i < rows_; ++i) {
    for (int q = row_ptr_[static_cast<std::size_t>(i)]; q < row_ptr_[static_cast<std::size_t>(i) + 1]; ++q) {
      const int j = col_idx_[static_cast<std::size_t>(q)];
      const double other = j < rows_ && i < cols_ ? coeff(j, i) : 0.0;
      worst = std::max(worst, std::abs(values_[static_cast<std::size_t>(q)] - other));
    }
  }
  return worst;
}

std::vector<double> CsrMatrix::to_dense() const {
  std::vector<double> d(static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_), 0.0);
  for (int i = 0; i < rows_; ++i) {
    for (int q = row_ptr_[static_cast<std::size_t>(i)]; q < row_ptr_[static_cast<std::size_t>(i) + 1]; ++q) {
      d[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
        static_cast<std::size_t>(col_idx_[static_cast<std::size_t>(q)])] = values_[static_cast<std::size_t>(q)];
    }
  }
  return d;
}

void CsrMatrix::write_triplets(std::ostream& os) const {
  const auto old = os.precision(17);
  for (int i = 0; i < rows_; ++i) {
    for (int q = row_ptr_[static_cast<std::size_t>(i)]; q < row_ptr_[static_cast<std::size_t>(i) + 1]; ++q) {
      os << i << ' ' << col_idx_[static_cast<std::size_t>(q)] << ' ' << values_[static_cast<std::size_t>(q)] << '\n';
    }
  }
  os.precision(old);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void axpy(double a, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

}  // namespace genalpha::linalg
