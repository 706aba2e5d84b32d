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

#include "genalpha/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "genalpha/error.hpp"

namespace genalpha::assembly {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw UsageError("gauss_legendre: need at least one point");
  GaussRule r;
  r.points.resize(n);
  r.weights.resize(n);
  // Newton iteration on P_n from the Chebyshev-like initial guesses.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map [-1,1] -> [0,1]; ascending order.
    r.points[i] = 0.5 * (1.0 - x);
    r.points[n - 1 - i] = 0.5 * (1.0 + x);
    r.weights[i] = r.weights[n - 1 - i] = 0.5 * w;
  }
  if (n % 2 == 1) r.points[n / 2] = 0.5;
  return r;
}

QuadratureRule::QuadratureRule(const splines::SplineSpace& space, std::vector<int> points_per_span)
    : n_(std::move(points_per_span)) {
  const int d = space.dim();
  if (n_.empty()) {
    for (int k = 0; k < d; ++k) n_.push_back(space.direction(k).degree() + 1);
  }
  if (static_cast<int>(n_.size()) != d) throw UsageError("quadrature rule: one point count per direction");
  points_.resize(d);
  weights_.resize(d);
  for (int k = 0; k < d; ++k) {
    const GaussRule g = gauss_legendre(n_[k]);
    const auto& br = space.direction(k).breakpoints();
    for (std::size_t e = 0; e + 1 < br.size(); ++e) {
      const double a = br[e];
      const double h = br[e + 1] - br[e];
      std::vector<double> pts(g.points.size());
      std::vector<double> wts(g.points.size());
      for (std::size_t q = 0; q < pts.size(); ++q) {
        pts[q] = a + h * g.points[q];
        wts[q] = h * g.weights[q];
      }
      points_[k].push_back(std::move(pts));
      weights_[k].push_back(std::move(wts));
    }
  }
}

QuadratureRule QuadratureRule::with_extra(const splines::SplineSpace& space, int extra) {
  std::vector<int> n;
  for (int k = 0; k < space.dim(); ++k) n.push_back(space.direction(k).degree() + 1 + extra);
  return QuadratureRule(space, n);
}

}  // namespace genalpha::assembly
