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

// Galerkin mass, stiffness and load assembly on single and multi-patch spaces.

#include <functional>
#include <vector>

#include "genalpha/geometry.hpp"
#include "genalpha/linalg/sparse.hpp"
#include "genalpha/quadrature.hpp"

namespace genalpha::assembly {

using ScalarField = std::function<double(const geometry::Point&)>;

/// [M]_ij = int B_i B_j |J| over one patch (local indices of `space`).
linalg::CsrMatrix assemble_mass(const splines::SplineSpace& space, const geometry::Patch& patch,
                                const QuadratureRule& quad);
/// [K]_ij = omega^2 int grad B_i . grad B_j |J|.
linalg::CsrMatrix assemble_stiffness(const splines::SplineSpace& space, const geometry::Patch& patch,
                                     const QuadratureRule& quad, double omega);

struct PatchMatrices {
  linalg::CsrMatrix mass;
  linalg::CsrMatrix stiffness;
};
/// Mass and stiffness in one element sweep.
PatchMatrices assemble_patch(const splines::SplineSpace& space, const geometry::Patch& patch,
                             const QuadratureRule& quad, double omega);

/// F_i = int f B_i |J|.
std::vector<double> assemble_load(const splines::SplineSpace& space, const geometry::Patch& patch,
                                  const QuadratureRule& quad, const ScalarField& f);

struct GlobalMatrices {
  linalg::CsrMatrix mass;
  linalg::CsrMatrix stiffness;
  /// Patch-local mass matrices, indexed by local numbering of each patch.
  std::vector<linalg::CsrMatrix> patch_mass;
};

/// Sums patch contributions through G^(r). `extra_points` adds Gauss points
/// per direction beyond p+1.
GlobalMatrices assemble_multipatch(const geometry::MultiPatchSpace& mp, double omega, int extra_points = 0);
std::vector<double> assemble_multipatch_load(const geometry::MultiPatchSpace& mp, const ScalarField& f,
                                             int extra_points = 0);

/// Scatter-add of a patch-local matrix into a global one of size n.
linalg::CsrMatrix scatter(const linalg::CsrMatrix& local, const std::vector<int>& l2g, int n);

/// Integrates (u_h - u)^2 and u^2 over the multi-patch domain, u_h given by
/// global coefficients; returns {||u_h - u||, ||u||}.
std::pair<double, double> l2_error(const geometry::MultiPatchSpace& mp, std::span<const double> coeffs,
                                   const ScalarField& u, int extra_points = 2);

/// Evaluates the discrete function with global coefficients at a parametric
/// point of patch r.
double evaluate(const geometry::MultiPatchSpace& mp, int r, std::span<const double> coeffs,
                std::span<const double> xi);

/// Coefficients on the boundary functions approximating g on the boundary:
/// L2 projection over non-degenerate boundary faces; functions supported
/// only on collapsed faces or on 1D end points take g at that point.
/// Returns values indexed like mp.boundary_dofs().
std::vector<double> boundary_projection(const geometry::MultiPatchSpace& mp, const ScalarField& g);

}  // namespace genalpha::assembly
