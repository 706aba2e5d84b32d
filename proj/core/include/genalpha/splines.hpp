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

// Univariate and tensor-product B-spline bases on open knot vectors.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace genalpha::splines {

/// An open knot vector on [0, 1]: the first and last p+1 knots are 0 and 1,
/// interior knots have multiplicity at most p. Immutable.
class KnotVector {
 public:
  KnotVector(int degree, std::vector<double> knots);

  /// Maximal-regularity knot vector with `n_sub` uniform spans.
  static KnotVector uniform(int degree, int n_sub);

  int degree() const noexcept { return degree_; }
  /// Number of basis functions m.
  int size() const noexcept { return static_cast<int>(knots_.size()) - degree_ - 1; }
  std::span<const double> knots() const noexcept { return knots_; }
  double operator[](std::size_t i) const { return knots_[i]; }

  /// Distinct knot values, i.e. element boundaries.
  const std::vector<double>& breakpoints() const noexcept { return breaks_; }
  int num_elements() const noexcept { return static_cast<int>(breaks_.size()) - 1; }
  /// Largest span length h.
  double mesh_size() const noexcept;
  /// Quasi-uniformity constant: min nonempty span / h.
  double quasi_uniformity() const noexcept;

  /// Knot-span index i with knots[i] <= x < knots[i+1]; the last nonempty
  /// span is closed at x = 1. Throws DomainError outside [0, 1].
  int find_span(double x) const;

  /// Index of the knot span that starts at breakpoint `element`.
  int element_span(int element) const { return elem_span_[static_cast<std::size_t>(element)]; }

  /// Mirror image under x -> 1 - x.
  KnotVector reversed() const;

  bool operator==(const KnotVector&) const = default;

 private:
  int degree_;
  std::vector<double> knots_;
  std::vector<double> breaks_;
  std::vector<int> elem_span_;
};

/// The p+1 basis functions that may be nonzero at a point.
struct BasisValues {
  int first = 0;               ///< index of the first active function
  std::vector<double> values;  ///< b_{first}, ..., b_{first+p}
};

/// Values and derivatives; `ders[r][j]` is the r-th derivative of b_{first+j}.
struct BasisDerivatives {
  int first = 0;
  std::vector<std::vector<double>> ders;
};

BasisValues eval_basis(const KnotVector& kv, double x);
void eval_basis(const KnotVector& kv, int span, double x, std::span<double> out);

/// Derivatives up to `order`; rows above the degree are exact zeros.
BasisDerivatives eval_basis_derivatives(const KnotVector& kv, double x, int order);
/// Allocation-free variant; `out` holds (order+1) rows of p+1 values.
void eval_basis_derivatives(const KnotVector& kv, int span, double x, int order,
                            std::span<double> out);

/// Tensor product of d <= 3 univariate spaces with co-lexicographic ordering
/// (the first direction varies fastest).
class SplineSpace {
 public:
  explicit SplineSpace(std::vector<KnotVector> directions);

  /// Same degree and subdivision count in every direction.
  static SplineSpace uniform(int dim, int degree, int n_sub);

  int dim() const noexcept { return static_cast<int>(dirs_.size()); }
  const KnotVector& direction(int k) const { return dirs_[static_cast<std::size_t>(k)]; }
  const std::vector<KnotVector>& directions() const noexcept { return dirs_; }
  /// Basis size per direction.
  std::array<int, 3> shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return size_; }

  std::size_t flat_index(std::array<int, 3> multi) const noexcept {
    return static_cast<std::size_t>(multi[0]) +
           static_cast<std::size_t>(shape_[0]) *
               (static_cast<std::size_t>(multi[1]) +
                static_cast<std::size_t>(shape_[1]) * static_cast<std::size_t>(multi[2]));
  }
  std::array<int, 3> multi_index(std::size_t flat) const noexcept;

  bool operator==(const SplineSpace&) const = default;

 private:
  std::vector<KnotVector> dirs_;
  std::array<int, 3> shape_{1, 1, 1};
  std::size_t size_ = 1;
};

/// Active functions at a point: the box first[k] .. first[k]+p_k per
/// direction, values stored co-lexicographically over that box.
struct TensorValues {
  std::array<int, 3> first{0, 0, 0};
  std::array<int, 3> count{1, 1, 1};
  std::vector<double> values;
};

/// Throws UsageError when point.size() != space.dim().
TensorValues tensor_eval(const SplineSpace& space, std::span<const double> point);

}  // namespace genalpha::splines
