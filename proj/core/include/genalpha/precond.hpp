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

// Mass-matrix preconditioners: diagonally scaled parametric Kronecker mass on
// one patch, and its additive Schwarz sum over patches.

#include <atomic>
#include <cstdint>
#include <memory>
#include <vector>

#include "genalpha/dirichlet.hpp"
#include "genalpha/geometry.hpp"
#include "genalpha/linalg/kronecker.hpp"
#include "genalpha/linalg/pcg.hpp"

namespace genalpha::precond {

/// Parametric (unit-cube, no Jacobian) univariate mass matrix of a knot
/// vector, bandwidth p, computed with p+1 Gauss points per span.
linalg::BandedSymmetric univariate_mass(const splines::KnotVector& kv);

/// P = D^{1/2} Dh^{-1/2} Mh Dh^{-1/2} D^{1/2}, D = diag(M), Dh = diag(Mh).
class SinglePatchPrecond {
 public:
  SinglePatchPrecond(std::vector<double> mass_diag, linalg::KroneckerOperator mhat);

  std::size_t size() const noexcept { return scale_.size(); }
  /// w = P^{-1} v.
  void apply_inverse(std::span<const double> v, std::span<double> w) const;
  /// y = P x.
  void apply(std::span<const double> x, std::span<double> y) const;
  /// Operations of one apply_inverse.
  std::uint64_t flops() const noexcept { return mhat_.solve_flops() + 2 * scale_.size(); }
  const linalg::KroneckerOperator& mhat() const noexcept { return mhat_; }

 private:
  std::vector<double> scale_;  // sqrt(D / Dh)
  linalg::KroneckerOperator mhat_;
};

/// Builds the preconditioner from diag(M) and the univariate parametric
/// masses (already restricted to the free index box). Throws AssemblyError
/// on a nonpositive diagonal entry.
SinglePatchPrecond build_single_patch(std::vector<double> mass_diag, std::vector<linalg::BandedSymmetric> univariate);

/// w = sum_r R_r^T P_r^{-1} R_r v.
class SchwarzPrecond {
 public:
  struct Local {
    SinglePatchPrecond precond;
    std::vector<int> restriction;  ///< free index of each local unknown
  };
  SchwarzPrecond(std::vector<Local> locals, std::size_t global_size);

  std::size_t size() const noexcept { return n_; }
  int num_patches() const noexcept { return static_cast<int>(locals_.size()); }
  const Local& local(int r) const { return locals_[static_cast<std::size_t>(r)]; }
  void apply_inverse(std::span<const double> v, std::span<double> w) const;
  /// Operations counted during apply_inverse calls so far.
  std::uint64_t counted_flops() const noexcept { return counted_.load(); }
  void reset_flop_counter() const noexcept { counted_.store(0); }
  /// Operations of one application.
  std::uint64_t flops() const noexcept;
  linalg::LinearOperator as_operator() const;

 private:
  std::vector<Local> locals_;
  std::size_t n_;
  mutable std::atomic<std::uint64_t> counted_{0};
};

/// One local preconditioner per patch on the free unknowns of that patch
/// (which must form a tensor-product index box), scaled by the diagonal of
/// the patch-local mass matrix. With one patch this is the single-patch
/// preconditioner on the reduced system.
std::shared_ptr<SchwarzPrecond> build_schwarz(const geometry::MultiPatchSpace& mp,
                                              const std::vector<linalg::CsrMatrix>& patch_mass,
                                              const assembly::SemiDiscreteSystem& system);

}  // namespace genalpha::precond
