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

#include "genalpha/linalg/power_iteration.hpp"

#include <cmath>
#include <random>

#include "genalpha/error.hpp"
#include "genalpha/linalg/sparse.hpp"

namespace genalpha::linalg {

PowerResult power_iteration_genmax(const LinearOperator& k_apply, const LinearOperator& m_apply,
                                   const LinearOperator& m_solve, std::size_t n, const PowerOptions& opt) {
  PowerResult res;
  if (n == 0) throw UsageError("power iteration: empty operator");
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> x(n), kx(n), mx(n);
  for (auto& v : x) v = dist(rng);

  auto normalize = [&] {
    m_apply(x, mx);
    const double s = std::sqrt(dot(x, mx));
    if (!(s > 0.0)) throw UsageError("power iteration: operator annihilated the iterate");
    for (auto& v : x) v /= s;
    for (auto& v : mx) v /= s;
  };
  normalize();
  k_apply(x, kx);
  double lambda = dot(x, kx);
  for (int it = 1; it <= opt.max_iter; ++it) {
    m_solve(kx, x);
    normalize();
    k_apply(x, kx);
    const double next = dot(x, kx);
    res.iterations = it;
    const double change = std::abs(next - lambda);
    lambda = std::max(lambda, next);
    if (change <= opt.rel_tol * std::abs(lambda)) {
      res.converged = true;
      break;
    }
  }
  res.lambda = lambda;
  res.low_confidence = !res.converged;
  return res;
}

}  // namespace genalpha::linalg
