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

#include <vector>

#include "genalpha/splines.hpp"

namespace genalpha::assembly {

/// n-point Gauss-Legendre rule on [0, 1].
struct GaussRule {
  std::vector<double> points;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

/// Per-direction Gauss points and weights on every knot span of a space.
class QuadratureRule {
 public:
  /// `points_per_span[k]` points in direction k; the default is p_k + 1.
  QuadratureRule(const splines::SplineSpace& space, std::vector<int> points_per_span = {});
  static QuadratureRule with_extra(const splines::SplineSpace& space, int extra);

  int dim() const noexcept { return static_cast<int>(points_.size()); }
  int num_elements(int k) const { return static_cast<int>(points_[k].size()); }
  int points_per_span(int k) const { return n_[k]; }
  const std::vector<double>& points(int k, int element) const { return points_[k][element]; }
  const std::vector<double>& weights(int k, int element) const { return weights_[k][element]; }

 private:
  std::vector<int> n_;
  std::vector<std::vector<std::vector<double>>> points_;
  std::vector<std::vector<std::vector<double>>> weights_;
};

}  // namespace genalpha::assembly
