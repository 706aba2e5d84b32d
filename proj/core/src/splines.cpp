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

#include "genalpha/splines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "genalpha/error.hpp"

namespace genalpha::splines {

KnotVector::KnotVector(int degree, std::vector<double> knots)
    : degree_(degree), knots_(std::move(knots)) {
  if (degree_ < 0) throw DomainError("knot vector: negative degree");
  const auto p = static_cast<std::size_t>(degree_);
  if (knots_.size() < 2 * p + 2) {
    throw DomainError("knot vector: need at least 2(p+1) knots");
  }
  if (!std::is_sorted(knots_.begin(), knots_.end())) {
    throw DomainError("knot vector: knots must be nondecreasing");
  }
  for (std::size_t i = 0; i <= p; ++i) {
    if (knots_[i] != 0.0 || knots_[knots_.size() - 1 - i] != 1.0) {
      throw DomainError("knot vector: not open on [0,1]");
    }
  }
  // Interior multiplicity.
  std::size_t run = 1;
  for (std::size_t i = p + 1; i + p + 1 < knots_.size(); ++i) {
    run = (knots_[i] == knots_[i - 1] && i > p + 1) ? run + 1 : 1;
    if (knots_[i] == 0.0 || knots_[i] == 1.0 || run > std::max<std::size_t>(p, 1)) {
      throw DomainError("knot vector: interior knot multiplicity exceeds degree " +
                        std::to_string(degree_));
    }
  }
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    if (knots_[i] < knots_[i + 1]) {
      if (breaks_.empty()) breaks_.push_back(knots_[i]);
      breaks_.push_back(knots_[i + 1]);
      elem_span_.push_back(static_cast<int>(i));
    }
  }
}

KnotVector KnotVector::uniform(int degree, int n_sub) {
  if (n_sub < 1) throw DomainError("knot vector: n_sub must be positive");
  if (degree < 0) throw DomainError("knot vector: negative degree");
  std::vector<double> k(static_cast<std::size_t>(degree + 1), 0.0);
  for (int i = 1; i < n_sub; ++i) k.push_back(static_cast<double>(i) / n_sub);
  k.insert(k.end(), static_cast<std::size_t>(degree + 1), 1.0);
  return KnotVector(degree, std::move(k));
}

double KnotVector::mesh_size() const noexcept {
  double h = 0.0;
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) h = std::max(h, breaks_[i + 1] - breaks_[i]);
  return h;
}

double KnotVector::quasi_uniformity() const noexcept {
  double lo = 1.0;
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) lo = std::min(lo, breaks_[i + 1] - breaks_[i]);
  return lo / mesh_size();
}

int KnotVector::find_span(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("find_span: x = " + std::to_string(x) + " outside [0,1]");
  }
  const int m = size();
  if (x == 1.0) return elem_span_.back();
  // First knot strictly greater than x among knots[p+1 .. m].
  const auto begin = knots_.begin() + degree_ + 1;
  const auto end = knots_.begin() + m + 1;
  const auto it = std::upper_bound(begin, end, x);
  return static_cast<int>(it - knots_.begin()) - 1;
}

KnotVector KnotVector::reversed() const {
  std::vector<double> r(knots_.size());
  for (std::size_t i = 0; i < knots_.size(); ++i) r[i] = 1.0 - knots_[knots_.size() - 1 - i];
  // Endpoints are exact; interior knots are mirrored.
  return KnotVector(degree_, std::move(r));
}

void eval_basis(const KnotVector& kv, int span, double x, std::span<double> out) {
  // Triangular Cox-de Boor scheme; denominators are span lengths of
  // nonempty spans and never vanish.
  const int p = kv.degree();
  std::array<double, 32> left{};
  std::array<double, 32> right{};
  out[0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[static_cast<std::size_t>(j)] = x - kv[static_cast<std::size_t>(span + 1 - j)];
    right[static_cast<std::size_t>(j)] = kv[static_cast<std::size_t>(span + j)] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double temp = out[static_cast<std::size_t>(r)] /
                          (right[static_cast<std::size_t>(r + 1)] + left[static_cast<std::size_t>(j - r)]);
      out[static_cast<std::size_t>(r)] = saved + right[static_cast<std::size_t>(r + 1)] * temp;
      saved = left[static_cast<std::size_t>(j - r)] * temp;
    }
    out[static_cast<std::size_t>(j)] = saved;
  }
}

BasisValues eval_basis(const KnotVector& kv, double x) {
  const int span = kv.find_span(x);
  BasisValues b;
  b.first = span - kv.degree();
  b.values.resize(static_cast<std::size_t>(kv.degree() + 1));
  eval_basis(kv, span, x, b.values);
  return b;
}

void eval_basis_derivatives(const KnotVector& kv, int span, double x, int order,
                            std::span<double> out) {
  const int p = kv.degree();
  const auto n1 = static_cast<std::size_t>(p + 1);
  std::fill(out.begin(), out.end(), 0.0);
  if (p > 30) throw DomainError("eval_basis_derivatives: degree too large");

  // ndu holds basis functions (upper triangle) and knot differences (lower).
  std::array<std::array<double, 32>, 32> ndu{};
  std::array<double, 32> left{};
  std::array<double, 32> right{};
  ndu[0][0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[static_cast<std::size_t>(j)] = x - kv[static_cast<std::size_t>(span + 1 - j)];
    right[static_cast<std::size_t>(j)] = kv[static_cast<std::size_t>(span + j)] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)] =
          right[static_cast<std::size_t>(r + 1)] + left[static_cast<std::size_t>(j - r)];
      const double temp = ndu[static_cast<std::size_t>(r)][static_cast<std::size_t>(j - 1)] /
                          ndu[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];
      ndu[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
          saved + right[static_cast<std::size_t>(r + 1)] * temp;
      saved = left[static_cast<std::size_t>(j - r)] * temp;
    }
    ndu[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = saved;
  }
  for (std::size_t j = 0; j < n1; ++j) out[j] = ndu[j][n1 - 1];

  const int top = std::min(order, p);
  std::array<std::array<double, 32>, 2> a{};
  for (int r = 0; r <= p; ++r) {
    int s1 = 0;
    int s2 = 1;
    a[0][0] = 1.0;
    for (int k = 1; k <= top; ++k) {
      double d = 0.0;
      const int rk = r - k;
      const int pk = p - k;
      auto& as1 = a[static_cast<std::size_t>(s1)];
      auto& as2 = a[static_cast<std::size_t>(s2)];
      if (r >= k) {
        as2[0] = as1[0] / ndu[static_cast<std::size_t>(pk + 1)][static_cast<std::size_t>(rk)];
        d = as2[0] * ndu[static_cast<std::size_t>(rk)][static_cast<std::size_t>(pk)];
      }
      const int j1 = rk >= -1 ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        as2[static_cast<std::size_t>(j)] =
            (as1[static_cast<std::size_t>(j)] - as1[static_cast<std::size_t>(j - 1)]) /
            ndu[static_cast<std::size_t>(pk + 1)][static_cast<std::size_t>(rk + j)];
        d += as2[static_cast<std::size_t>(j)] *
             ndu[static_cast<std::size_t>(rk + j)][static_cast<std::size_t>(pk)];
      }
      if (r <= pk) {
        as2[static_cast<std::size_t>(k)] =
            -as1[static_cast<std::size_t>(k - 1)] /
            ndu[static_cast<std::size_t>(pk + 1)][static_cast<std::size_t>(r)];
        d += as2[static_cast<std::size_t>(k)] *
             ndu[static_cast<std::size_t>(r)][static_cast<std::size_t>(pk)];
      }
      out[static_cast<std::size_t>(k) * n1 + static_cast<std::size_t>(r)] = d;
      std::swap(s1, s2);
    }
  }
  double factor = p;
  for (int k = 1; k <= top; ++k) {
    for (std::size_t j = 0; j < n1; ++j) out[static_cast<std::size_t>(k) * n1 + j] *= factor;
    factor *= p - k;
  }
}

BasisDerivatives eval_basis_derivatives(const KnotVector& kv, double x, int order) {
  if (order < 0) throw DomainError("eval_basis_derivatives: negative order");
  const int span = kv.find_span(x);
  const auto n1 = static_cast<std::size_t>(kv.degree() + 1);
  std::vector<double> flat(static_cast<std::size_t>(order + 1) * n1);
  eval_basis_derivatives(kv, span, x, order, flat);
  BasisDerivatives d;
  d.first = span - kv.degree();
  d.ders.resize(static_cast<std::size_t>(order + 1));
  for (std::size_t r = 0; r <= static_cast<std::size_t>(order); ++r) {
    d.ders[r].assign(flat.begin() + static_cast<std::ptrdiff_t>(r * n1),
                     flat.begin() + static_cast<std::ptrdiff_t>((r + 1) * n1));
  }
  return d;
}

SplineSpace::SplineSpace(std::vector<KnotVector> directions) : dirs_(std::move(directions)) {
  if (dirs_.empty() || dirs_.size() > 3) {
    throw UsageError("spline space: dimension must be 1, 2 or 3");
  }
  for (std::size_t k = 0; k < dirs_.size(); ++k) {
    shape_[k] = dirs_[k].size();
    size_ *= static_cast<std::size_t>(shape_[k]);
  }
}

SplineSpace SplineSpace::uniform(int dim, int degree, int n_sub) {
  if (dim < 1 || dim > 3) throw UsageError("spline space: dimension must be 1, 2 or 3");
  return SplineSpace(std::vector<KnotVector>(static_cast<std::size_t>(dim),
                                             KnotVector::uniform(degree, n_sub)));
}

std::array<int, 3> SplineSpace::multi_index(std::size_t flat) const noexcept {
  std::array<int, 3> m{0, 0, 0};
  for (std::size_t k = 0; k < 3; ++k) {
    const auto s = static_cast<std::size_t>(shape_[k]);
    m[k] = static_cast<int>(flat % s);
    flat /= s;
  }
  return m;
}

TensorValues tensor_eval(const SplineSpace& space, std::span<const double> point) {
  const int d = space.dim();
  if (static_cast<int>(point.size()) != d) {
    throw UsageError("tensor_eval: point has " + std::to_string(point.size()) +
                     " coordinates, space has dimension " + std::to_string(d));
  }
  TensorValues tv;
  std::array<std::vector<double>, 3> uni;
  for (int k = 0; k < d; ++k) {
    const auto b = eval_basis(space.direction(k), point[static_cast<std::size_t>(k)]);
    tv.first[static_cast<std::size_t>(k)] = b.first;
    tv.count[static_cast<std::size_t>(k)] = static_cast<int>(b.values.size());
    uni[static_cast<std::size_t>(k)] = b.values;
  }
  for (int k = d; k < 3; ++k) uni[static_cast<std::size_t>(k)] = {1.0};
  tv.values.reserve(static_cast<std::size_t>(tv.count[0] * tv.count[1] * tv.count[2]));
  for (double v2 : uni[2]) {
    for (double v1 : uni[1]) {
      for (double v0 : uni[0]) tv.values.push_back(v0 * v1 * v2);
    }
  }
  return tv;
}

}  // namespace genalpha::splines
