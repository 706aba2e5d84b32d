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

// Algorithmic parameters of the explicit generalized-alpha family of order 2k.

#include <span>
#include <vector>

namespace genalpha::integrator {

/// Closed forms used for blocks j < k. `derived` places the coalescing
/// principal roots of each block at -rho_b, which makes every block
/// isospectral with the last one; `published` keeps the alternative closed-form
/// set, whose roots coalesce at +rho_b (smaller stability region for k >= 2).
enum class BlockFormulas { derived, published };

struct BlockParams {
  double rho_b = 0.0;
  double rho_s = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double alpha_f = 0.0;
  double omega_b = 0.0;  ///< closed-form bifurcation limit
  double omega_s = 0.0;  ///< closed-form stability limit (reported, not used for CFL)
};

struct GenAlphaParams {
  int k = 1;
  BlockFormulas formulas = BlockFormulas::derived;
  std::vector<BlockParams> blocks;  ///< blocks[j-1] for j = 1..k; the last one is the k-block
  int order() const noexcept { return 2 * k; }
  const BlockParams& block(int j) const { return blocks[static_cast<std::size_t>(j)]; }
};

/// Throws ParameterError unless k >= 1, both lists have k entries and
/// 0 <= rho_s <= rho_b < 1 per block.
GenAlphaParams compute_params(int k, std::span<const double> rho_b, std::span<const double> rho_s,
                              BlockFormulas formulas = BlockFormulas::derived);
/// Same rho for every rho_b and rho_s.
GenAlphaParams compute_params(int k, double rho, BlockFormulas formulas = BlockFormulas::derived);

/// Closed forms; `last` selects the k-block formulas.
double omega_b_closed_form(double rho_b, double rho_s, bool last, BlockFormulas formulas);
double omega_s_closed_form(double rho_b, double rho_s, bool last);

}  // namespace genalpha::integrator
