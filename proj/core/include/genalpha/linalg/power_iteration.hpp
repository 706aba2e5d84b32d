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

#include <cstdint>

#include "genalpha/linalg/pcg.hpp"

namespace genalpha::linalg {

struct PowerOptions {
  double rel_tol = 1e-8;  ///< stop when the Rayleigh quotient changes less than this
  int max_iter = 5000;
  std::uint64_t seed = 12345;
};

struct PowerResult {
  double lambda = 0.0;
  int iterations = 0;
  bool converged = false;
  bool low_confidence = false;  ///< stagnated or hit max_iter
};

/// Largest eigenvalue of M^{-1} K (M SPD, K symmetric PSD) by power iteration
/// in the M inner product; the Rayleigh quotient x^T K x / x^T M x is
/// nondecreasing over the iterates.
PowerResult power_iteration_genmax(const LinearOperator& k_apply, const LinearOperator& m_apply,
                                   const LinearOperator& m_solve, std::size_t n, const PowerOptions& options = {});

}  // namespace genalpha::linalg
