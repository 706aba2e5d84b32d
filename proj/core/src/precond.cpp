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

#include "genalpha/precond.hpp"

#include <cmath>
#include <string>

#include "genalpha/error.hpp"
#include "genalpha/parallel.hpp"
#include "genalpha/quadrature.hpp"

namespace genalpha::precond {

using linalg::BandedSymmetric;
using linalg::KroneckerOperator;

BandedSymmetric univariate_mass(const splines::KnotVector& kv) {
  const int p = kv.degree();
  BandedSymmetric m(kv.size(), p);
  const auto g = assembly::gauss_legendre(p + 1);
  const auto& br = kv.breakpoints();
  std::vector<double> vals(p + 1);
  for (int e = 0; e < kv.num_elements(); ++e) {
    const int span = kv.element_span(e);
    const double h = br[e + 1] - br[e];
    for (std::size_t q = 0; q < g.points.size(); ++q) {
      const double x = br[e] + h * g.points[q];
      splines::eval_basis(kv, span, x, vals);
      const double w = h * g.weights[q];
      for (int a = 0; a <= p; ++a) {
        for (int b = 0; b <= a; ++b) m.at(span - p + a, span - p + b) += w * vals[a] * vals[b];
      }
    }
  }
  return m;
}

SinglePatchPrecond::SinglePatchPrecond(std::vector<double> mass_diag, KroneckerOperator mhat)
    : scale_(std::move(mass_diag)), mhat_(std::move(mhat)) {
  if (scale_.size() != mhat_.size()) throw UsageError("single-patch preconditioner: size mismatch");
  // Diagonal of the Kronecker product: product of factor diagonals.
  const int d = mhat_.dim();
  std::array<int, 3> shape{1, 1, 1};
  for (int k = 0; k < d; ++k) shape[k] = mhat_.factor(k).size();
  std::size_t i = 0;
  for (int c = 0; c < shape[2]; ++c) {
    for (int b = 0; b < shape[1]; ++b) {
      for (int a = 0; a < shape[0]; ++a, ++i) {
        double dh = mhat_.factor(0).at(a, a);
        if (d > 1) dh *= mhat_.factor(1).at(b, b);
        if (d > 2) dh *= mhat_.factor(2).at(c, c);
        if (!(scale_[i] > 0.0) || !(dh > 0.0)) {
          throw AssemblyError("preconditioner: nonpositive diagonal entry at local index " + std::to_string(i));
        }
        scale_[i] = std::sqrt(scale_[i] / dh);
      }
    }
  }
}

void SinglePatchPrecond::apply_inverse(std::span<const double> v, std::span<double> w) const {
  for (std::size_t i = 0; i < scale_.size(); ++i) w[i] = v[i] / scale_[i];
  mhat_.solve_in_place(w);
  for (std::size_t i = 0; i < scale_.size(); ++i) w[i] /= scale_[i];
}

void SinglePatchPrecond::apply(std::span<const double> x, std::span<double> y) const {
  std::vector<double> t(scale_.size());
  for (std::size_t i = 0; i < scale_.size(); ++i) t[i] = x[i] * scale_[i];
  mhat_.apply(t, y);
  for (std::size_t i = 0; i < scale_.size(); ++i) y[i] *= scale_[i];
}

SinglePatchPrecond build_single_patch(std::vector<double> mass_diag, std::vector<BandedSymmetric> univariate) {
  return SinglePatchPrecond(std::move(mass_diag), KroneckerOperator(std::move(univariate)));
}

SchwarzPrecond::SchwarzPrecond(std::vector<Local> locals, std::size_t global_size)
    : locals_(std::move(locals)), n_(global_size) {}

std::uint64_t SchwarzPrecond::flops() const noexcept {
  std::uint64_t f = 0;
  // Local solve plus one add per scattered entry.
  for (const auto& l : locals_) f += l.precond.flops() + l.restriction.size();
  return f;
}

void SchwarzPrecond::apply_inverse(std::span<const double> v, std::span<double> w) const {
  if (v.size() != n_ || w.size() != n_) throw UsageError("Schwarz preconditioner: size mismatch");
  const int np = num_patches();
  std::vector<std::vector<double>> out(np);
  std::atomic<std::uint64_t> ops{0};
  parallel_for(
      np,
      [&](int r) {
        const auto& l = locals_[r];
        std::vector<double> in(l.restriction.size());
        for (std::size_t i = 0; i < in.size(); ++i) in[i] = v[l.restriction[i]];
        out[r].resize(in.size());
        l.precond.apply_inverse(in, out[r]);
        ops += l.precond.flops();
      },
      1);
  std::fill(w.begin(), w.end(), 0.0);
  for (int r = 0; r < np; ++r) {
    const auto& l = locals_[r];
    for (std::size_t i = 0; i < l.restriction.size(); ++i) w[l.restriction[i]] += out[r][i];
    ops += l.restriction.size();
  }
  counted_ += ops.load();
}

linalg::LinearOperator SchwarzPrecond::as_operator() const {
  return [this](std::span<const double> in, std::span<double> out) { apply_inverse(in, out); };
}

std::shared_ptr<SchwarzPrecond> build_schwarz(const geometry::MultiPatchSpace& mp,
                                              const std::vector<linalg::CsrMatrix>& patch_mass,
                                              const assembly::SemiDiscreteSystem& system) {
  std::vector<SchwarzPrecond::Local> locals;
  const int d = mp.dim();
  for (int r = 0; r < mp.num_patches(); ++r) {
    const auto& space = mp.space(r);
    const auto& l2g = mp.local_to_global(r);
    const auto shape = space.shape();
    // Free local unknowns and their bounding box.
    std::array<int, 3> lo{shape[0], shape[1], shape[2]};
    std::array<int, 3> hi{0, 0, 0};
    std::size_t count = 0;
    for (std::size_t i = 0; i < space.size(); ++i) {
      if (system.free_index[l2g[i]] < 0) continue;
      ++count;
      const auto m = space.multi_index(i);
      for (int k = 0; k < 3; ++k) {
        lo[k] = std::min(lo[k], m[k]);
        hi[k] = std::max(hi[k], m[k] + 1);
      }
    }
    if (count == 0) continue;
    std::size_t box = 1;
    for (int k = 0; k < 3; ++k) box *= static_cast<std::size_t>(hi[k] - lo[k]);
    if (box != count) {
      throw AssemblyError("preconditioner: free unknowns of patch " + std::to_string(r) +
                          " do not form a tensor-product index box");
    }
    std::vector<int> local_ids;
    std::vector<int> restriction;
    for (int c = lo[2]; c < hi[2]; ++c) {
      for (int b = lo[1]; b < hi[1]; ++b) {
        for (int a = lo[0]; a < hi[0]; ++a) {
          const auto i = space.flat_index({a, b, c});
          local_ids.push_back(static_cast<int>(i));
          restriction.push_back(system.free_index[l2g[i]]);
        }
      }
    }
    std::vector<double> diag(local_ids.size());
    for (std::size_t i = 0; i < local_ids.size(); ++i) diag[i] = patch_mass[r].coeff(local_ids[i], local_ids[i]);
    std::vector<BandedSymmetric> uni;
    for (int k = 0; k < d; ++k) uni.push_back(univariate_mass(space.direction(k)).slice(lo[k], hi[k]));
    locals.push_back({build_single_patch(std::move(diag), std::move(uni)), std::move(restriction)});
  }
  return std::make_shared<SchwarzPrecond>(std::move(locals), system.free_dofs.size());
}

}  // namespace genalpha::precond
