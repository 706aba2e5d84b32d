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

// The semi-discrete system M U'' + C U' + K U = F on the free degrees of freedom.

#include <vector>

#include "genalpha/assembly.hpp"
#include "genalpha/linalg/sparse.hpp"

namespace genalpha::assembly {

/// Rayleigh damping C = a0 M + a1 K.
struct Damping {
  double a0 = 0.0;
  double a1 = 0.0;
  bool zero() const noexcept { return a0 == 0.0 && a1 == 0.0; }
};

struct SemiDiscreteSystem {
  linalg::CsrMatrix M;  ///< free x free
  linalg::CsrMatrix K;
  linalg::CsrMatrix C;  ///< empty pattern when undamped
  /// Couplings free x boundary, used to move a boundary lift to the right-hand side.
  linalg::CsrMatrix M_fb;
  linalg::CsrMatrix K_fb;
  linalg::CsrMatrix C_fb;
  std::vector<int> free_dofs;      ///< global index of each free unknown
  std::vector<int> boundary_dofs;  ///< global index of each constrained unknown
  std::vector<int> free_index;     ///< global -> free position, -1 if constrained
  double omega = 1.0;
  Damping damping;

  int size() const noexcept { return M.rows(); }
  bool damped() const noexcept { return !damping.zero(); }
};

/// Wraps matrices without constraints (all unknowns free).
SemiDiscreteSystem make_system(linalg::CsrMatrix M, linalg::CsrMatrix K, Damping damping = {},
                               double omega = 1.0);

/// Eliminates `boundary` (sorted global indices) from the global matrices.
SemiDiscreteSystem apply_dirichlet(const GlobalMatrices& g, const std::vector<int>& boundary, double omega,
                                   Damping damping = {});

/// Restriction of a global vector to free unknowns and the reverse embedding.
std::vector<double> restrict_to_free(const SemiDiscreteSystem& s, std::span<const double> global);
std::vector<double> expand(const SemiDiscreteSystem& s, std::span<const double> free_values,
                           std::span<const double> boundary_values);

}  // namespace genalpha::assembly
