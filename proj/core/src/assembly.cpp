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

#include "genalpha/assembly.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <map>

#include "genalpha/error.hpp"
#include "genalpha/parallel.hpp"

namespace genalpha::assembly {

using geometry::MultiPatchSpace;
using geometry::Patch;
using geometry::Point;
using linalg::CsrMatrix;
using linalg::Triplet;
using splines::SplineSpace;

namespace {

struct ElementData {
  int nloc = 0;
  int nq = 0;
  std::vector<int> local;     // flat local indices of the active functions
  std::vector<double> val;    // nq x nloc
  std::vector<double> grad;   // nq x nloc x 3, physical
  std::vector<double> wdet;   // quadrature weight times |J|
  std::vector<Point> x;
};

// Tabulated univariate values/derivatives at the Gauss points of each element.
class ElementSweep {
 public:
  ElementSweep(const SplineSpace& space, const Patch& patch, const QuadratureRule& quad, bool gradients)
      : space_(space), patch_(patch), quad_(quad), grads_(gradients), d_(space.dim()) {
    if (patch.dim() != d_) throw UsageError("assembly: space and patch dimensions differ");
    for (int k = 0; k < 3; ++k) {
      if (k >= d_) {
        ne_[k] = 1;
        nq_[k] = 1;
        np_[k] = 1;
        continue;
      }
      const auto& kv = space.direction(k);
      ne_[k] = kv.num_elements();
      nq_[k] = quad.points_per_span(k);
      np_[k] = kv.degree() + 1;
      if (quad.num_elements(k) != ne_[k]) throw UsageError("assembly: quadrature built for a different space");
      tab_[k].resize(ne_[k]);
      for (int e = 0; e < ne_[k]; ++e) {
        const int span = kv.element_span(e);
        for (double xq : quad.points(k, e)) {
          std::vector<double> buf(2 * np_[k]);
          splines::eval_basis_derivatives(kv, span, xq, 1, buf);
          tab_[k][e].insert(tab_[k][e].end(), buf.begin(), buf.end());
        }
      }
    }
  }

  int num_elements() const { return ne_[0] * ne_[1] * ne_[2]; }

  void eval(int e, ElementData& out) const {
    const std::array<int, 3> em{e % ne_[0], (e / ne_[0]) % ne_[1], e / (ne_[0] * ne_[1])};
    std::array<int, 3> first{0, 0, 0};
    for (int k = 0; k < d_; ++k) first[k] = space_.direction(k).element_span(em[k]) - space_.direction(k).degree();
    out.nloc = np_[0] * np_[1] * np_[2];
    out.nq = nq_[0] * nq_[1] * nq_[2];
    out.local.clear();
    for (int c = 0; c < np_[2]; ++c) {
      for (int b = 0; b < np_[1]; ++b) {
        for (int a = 0; a < np_[0]; ++a) {
          out.local.push_back(static_cast<int>(space_.flat_index({first[0] + a, first[1] + b, first[2] + c})));
        }
      }
    }
    out.val.assign(static_cast<std::size_t>(out.nq) * out.nloc, 0.0);
    if (grads_) out.grad.assign(static_cast<std::size_t>(out.nq) * out.nloc * 3, 0.0);
    out.wdet.resize(out.nq);
    out.x.resize(out.nq);

    static const std::vector<double> one{1.0, 0.0};
    const double* t[3];
    int q = 0;
    std::array<double, 3> xi{};
    for (int q2 = 0; q2 < nq_[2]; ++q2) {
      for (int q1 = 0; q1 < nq_[1]; ++q1) {
        for (int q0 = 0; q0 < nq_[0]; ++q0, ++q) {
          const std::array<int, 3> qq{q0, q1, q2};
          double w = 1.0;
          for (int k = 0; k < 3; ++k) {
            if (k < d_) {
              t[k] = tab_[k][em[k]].data() + 2 * np_[k] * qq[k];
              xi[k] = quad_.points(k, em[k])[qq[k]];
              w *= quad_.weights(k, em[k])[qq[k]];
            } else {
              t[k] = one.data();
            }
          }
          const auto m = patch_.eval(std::span<const double>(xi.data(), d_));
          if (!(m.det > 0.0)) {
            throw AssemblyError("assembly: nonpositive Jacobian at a quadrature point");
          }
          out.wdet[q] = w * m.det;
          out.x[q] = m.x;
          std::array<double, 9> inv_t{};  // J^{-T}
          if (grads_) inverse_transpose(m.jac, inv_t);
          int a = 0;
          for (int c = 0; c < np_[2]; ++c) {
            for (int b = 0; b < np_[1]; ++b) {
              for (int i = 0; i < np_[0]; ++i, ++a) {
                const double v0 = t[0][i], v1 = t[1][b], v2 = t[2][c];
                out.val[static_cast<std::size_t>(q) * out.nloc + a] = v0 * v1 * v2;
                if (!grads_) continue;
                const double g[3] = {t[0][np_[0] + i] * v1 * v2, v0 * t[1][np_[1] + b] * v2,
                                     v0 * v1 * t[2][np_[2] + c]};
                double* dst = &out.grad[(static_cast<std::size_t>(q) * out.nloc + a) * 3];
                for (int r = 0; r < d_; ++r) {
                  double s = 0.0;
                  for (int j = 0; j < d_; ++j) s += inv_t[3 * r + j] * g[j];
                  dst[r] = s;
                }
              }
            }
          }
        }
      }
    }
  }

 private:
  void inverse_transpose(const std::array<double, 9>& J, std::array<double, 9>& out) const {
    if (d_ == 1) {
      out[0] = 1.0 / J[0];
    } else if (d_ == 2) {
      const double det = J[0] * J[4] - J[1] * J[3];
      // (J^{-1})^T
      out[0] = J[4] / det;
      out[1] = -J[3] / det;
      out[3] = -J[1] / det;
      out[4] = J[0] / det;
    } else {
      std::array<double, 9> cof{};
      cof[0] = J[4] * J[8] - J[5] * J[7];
      cof[1] = -(J[3] * J[8] - J[5] * J[6]);
      cof[2] = J[3] * J[7] - J[4] * J[6];
      cof[3] = -(J[1] * J[8] - J[2] * J[7]);
      cof[4] = J[0] * J[8] - J[2] * J[6];
      cof[5] = -(J[0] * J[7] - J[1] * J[6]);
      cof[6] = J[1] * J[5] - J[2] * J[4];
      cof[7] = -(J[0] * J[5] - J[2] * J[3]);
      cof[8] = J[0] * J[4] - J[1] * J[3];
      const double det = J[0] * cof[0] + J[1] * cof[1] + J[2] * cof[2];
      for (int i = 0; i < 9; ++i) out[i] = cof[i] / det;  // inverse transpose = cofactor / det
    }
  }

  const SplineSpace& space_;
  const Patch& patch_;
  const QuadratureRule& quad_;
  bool grads_;
  int d_;
  std::array<int, 3> ne_{1, 1, 1};
  std::array<int, 3> nq_{1, 1, 1};
  std::array<int, 3> np_{1, 1, 1};
  std::array<std::vector<std::vector<double>>, 3> tab_;
};

// Runs body(chunk, element) over contiguous element chunks, one per worker.
template <class Body>
int for_chunks(int n_elem, Body&& body) {
  const int chunks = std::max(1, std::min(thread_count(), n_elem / 16));
  const int size = (n_elem + chunks - 1) / chunks;
  parallel_for(
      chunks,
      [&](int c) {
        for (int e = c * size; e < std::min(n_elem, (c + 1) * size); ++e) body(c, e);
      },
      1);
  return chunks;
}

}  // namespace

PatchMatrices assemble_patch(const SplineSpace& space, const Patch& patch, const QuadratureRule& quad, double omega) {
  ElementSweep sweep(space, patch, quad, true);
  const int ne = sweep.num_elements();
  const int chunks = std::max(1, std::min(thread_count(), ne / 16));
  std::vector<std::vector<Triplet>> tm(chunks), tk(chunks);
  std::vector<ElementData> data(chunks);
  const double w2 = omega * omega;
  const int d = space.dim();
  for_chunks(ne, [&](int c, int e) {
    ElementData& ed = data[c];
    sweep.eval(e, ed);
    const int n = ed.nloc;
    std::vector<double> me(static_cast<std::size_t>(n) * n, 0.0), ke(static_cast<std::size_t>(n) * n, 0.0);
    for (int q = 0; q < ed.nq; ++q) {
      const double* v = &ed.val[static_cast<std::size_t>(q) * n];
      const double* g = &ed.grad[static_cast<std::size_t>(q) * n * 3];
      const double w = ed.wdet[q];
      for (int a = 0; a < n; ++a) {
        const double va = v[a] * w;
        for (int b = 0; b <= a; ++b) {
          me[a * n + b] += va * v[b];
          double s = 0.0;
          for (int k = 0; k < d; ++k) s += g[3 * a + k] * g[3 * b + k];
          ke[a * n + b] += w * s;
        }
      }
    }
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b <= a; ++b) {
        tm[c].push_back({ed.local[a], ed.local[b], me[a * n + b]});
        tk[c].push_back({ed.local[a], ed.local[b], w2 * ke[a * n + b]});
        if (a != b) {
          tm[c].push_back({ed.local[b], ed.local[a], me[a * n + b]});
          tk[c].push_back({ed.local[b], ed.local[a], w2 * ke[a * n + b]});
        }
      }
    }
  });
  std::vector<Triplet> allm, allk;
  for (int c = 0; c < chunks; ++c) {
    allm.insert(allm.end(), tm[c].begin(), tm[c].end());
    allk.insert(allk.end(), tk[c].begin(), tk[c].end());
  }
  const int nd = static_cast<int>(space.size());
  return {CsrMatrix::from_triplets(nd, nd, std::move(allm)), CsrMatrix::from_triplets(nd, nd, std::move(allk))};
}

CsrMatrix assemble_mass(const SplineSpace& space, const Patch& patch, const QuadratureRule& quad) {
  return assemble_patch(space, patch, quad, 0.0).mass;
}

CsrMatrix assemble_stiffness(const SplineSpace& space, const Patch& patch, const QuadratureRule& quad,
                             double omega) {
  return assemble_patch(space, patch, quad, omega).stiffness;
}

std::vector<double> assemble_load(const SplineSpace& space, const Patch& patch, const QuadratureRule& quad,
                                  const ScalarField& f) {
  ElementSweep sweep(space, patch, quad, false);
  const int ne = sweep.num_elements();
  const int chunks = std::max(1, std::min(thread_count(), ne / 16));
  std::vector<std::vector<double>> part(chunks, std::vector<double>(space.size(), 0.0));
  std::vector<ElementData> data(chunks);
  for_chunks(ne, [&](int c, int e) {
    ElementData& ed = data[c];
    sweep.eval(e, ed);
    for (int q = 0; q < ed.nq; ++q) {
      const double fw = f(ed.x[q]) * ed.wdet[q];
      for (int a = 0; a < ed.nloc; ++a) part[c][ed.local[a]] += fw * ed.val[static_cast<std::size_t>(q) * ed.nloc + a];
    }
  });
  for (int c = 1; c < chunks; ++c) {
    for (std::size_t i = 0; i < space.size(); ++i) part[0][i] += part[c][i];
  }
  return part[0];
}

CsrMatrix scatter(const CsrMatrix& local, const std::vector<int>& l2g, int n) {
  std::vector<Triplet> t;
  t.reserve(local.nnz());
  const auto rp = local.row_ptr();
  const auto ci = local.col_idx();
  const auto v = local.values();
  for (int i = 0; i < local.rows(); ++i) {
    for (int q = rp[i]; q < rp[i + 1]; ++q) t.push_back({l2g[i], l2g[ci[q]], v[q]});
  }
  return CsrMatrix::from_triplets(n, n, std::move(t));
}

GlobalMatrices assemble_multipatch(const MultiPatchSpace& mp, double omega, int extra_points) {
  GlobalMatrices g;
  const int n = mp.size();
  g.mass = CsrMatrix(n, n);
  g.stiffness = CsrMatrix(n, n);
  std::vector<Triplet> tm, tk;
  for (int r = 0; r < mp.num_patches(); ++r) {
    const auto quad = QuadratureRule::with_extra(mp.space(r), extra_points);
    auto pm = assemble_patch(mp.space(r), mp.patch(r), quad, omega);
    const auto& l2g = mp.local_to_global(r);
    for (const auto* src : {&pm.mass, &pm.stiffness}) {
      auto& dst = src == &pm.mass ? tm : tk;
      const auto rp = src->row_ptr();
      const auto ci = src->col_idx();
      const auto v = src->values();
      for (int i = 0; i < src->rows(); ++i) {
        for (int q = rp[i]; q < rp[i + 1]; ++q) dst.push_back({l2g[i], l2g[ci[q]], v[q]});
      }
    }
    g.patch_mass.push_back(std::move(pm.mass));
  }
  g.mass = CsrMatrix::from_triplets(n, n, std::move(tm));
  g.stiffness = CsrMatrix::from_triplets(n, n, std::move(tk));
  return g;
}

std::vector<double> assemble_multipatch_load(const MultiPatchSpace& mp, const ScalarField& f, int extra_points) {
  std::vector<double> out(mp.size(), 0.0);
  for (int r = 0; r < mp.num_patches(); ++r) {
    const auto quad = QuadratureRule::with_extra(mp.space(r), extra_points);
    const auto loc = assemble_load(mp.space(r), mp.patch(r), quad, f);
    const auto& l2g = mp.local_to_global(r);
    for (std::size_t i = 0; i < loc.size(); ++i) out[l2g[i]] += loc[i];
  }
  return out;
}

std::pair<double, double> l2_error(const MultiPatchSpace& mp, std::span<const double> coeffs, const ScalarField& u,
                                   int extra_points) {
  double err = 0.0;
  double ref = 0.0;
  for (int r = 0; r < mp.num_patches(); ++r) {
    const auto quad = QuadratureRule::with_extra(mp.space(r), extra_points);
    ElementSweep sweep(mp.space(r), mp.patch(r), quad, false);
    const auto& l2g = mp.local_to_global(r);
    ElementData ed;
    for (int e = 0; e < sweep.num_elements(); ++e) {
      sweep.eval(e, ed);
      for (int q = 0; q < ed.nq; ++q) {
        double uh = 0.0;
        for (int a = 0; a < ed.nloc; ++a) uh += coeffs[l2g[ed.local[a]]] * ed.val[static_cast<std::size_t>(q) * ed.nloc + a];
        const double ue = u(ed.x[q]);
        err += (uh - ue) * (uh - ue) * ed.wdet[q];
        ref += ue * ue * ed.wdet[q];
      }
    }
  }
  return {std::sqrt(err), std::sqrt(ref)};
}

double evaluate(const MultiPatchSpace& mp, int r, std::span<const double> coeffs, std::span<const double> xi) {
  const auto tv = splines::tensor_eval(mp.space(r), xi);
  const auto& l2g = mp.local_to_global(r);
  double s = 0.0;
  int a = 0;
  for (int c = 0; c < tv.count[2]; ++c) {
    for (int b = 0; b < tv.count[1]; ++b) {
      for (int i = 0; i < tv.count[0]; ++i, ++a) {
        const auto loc = mp.space(r).flat_index({tv.first[0] + i, tv.first[1] + b, tv.first[2] + c});
        s += coeffs[l2g[loc]] * tv.values[a];
      }
    }
  }
  return s;
}

std::vector<double> boundary_projection(const MultiPatchSpace& mp, const ScalarField& g) {
  const auto& bd = mp.boundary_dofs();
  const int nb = static_cast<int>(bd.size());
  std::vector<int> pos(mp.size(), -1);
  for (int i = 0; i < nb; ++i) pos[bd[i]] = i;
  std::vector<double> out(nb, 0.0);
  std::vector<char> projected(nb, 0);
  std::vector<char> fixed(nb, 0);
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nb);
  const int d = mp.dim();

  for (const auto& [r, face] : mp.boundary_faces()) {
    const auto& space = mp.space(r);
    const auto& patch = mp.patch(r);
    const auto& l2g = mp.local_to_global(r);
    const auto dofs = geometry::face_dofs(space, face);
    const int dir = face / 2;
    if (d == 1) {
      const auto xi = geometry::face_point(1, face, {0.0, 0.0});
      const double v = g(patch.eval(std::span<const double>(xi.data(), 1)).x);
      for (int i : dofs) {
        out[pos[l2g[i]]] = v;
        fixed[pos[l2g[i]]] = 1;
      }
      continue;
    }
    std::vector<int> tdirs;
    for (int k = 0; k < d; ++k) {
      if (k != dir) tdirs.push_back(k);
    }
    // Face quadrature over the tangential spans.
    const int nt = static_cast<int>(tdirs.size());
    std::array<std::vector<double>, 2> pts, wts;
    for (int t = 0; t < nt; ++t) {
      const auto& kv = space.direction(tdirs[t]);
      const auto gr = gauss_legendre(kv.degree() + 2);
      const auto& br = kv.breakpoints();
      for (std::size_t e = 0; e + 1 < br.size(); ++e) {
        for (std::size_t q = 0; q < gr.points.size(); ++q) {
          pts[t].push_back(br[e] + (br[e + 1] - br[e]) * gr.points[q]);
          wts[t].push_back((br[e + 1] - br[e]) * gr.weights[q]);
        }
      }
    }
    if (nt == 1) {
      pts[1] = {0.0};
      wts[1] = {1.0};
    }
    std::map<std::pair<int, int>, double> local_mass;
    std::vector<double> local_rhs(dofs.size(), 0.0);
    double measure = 0.0;
    double extent = 0.0;
    for (const auto& cp : patch.control_points()) extent = std::max({extent, std::abs(cp[0]), std::abs(cp[1]), std::abs(cp[2])});
    for (std::size_t j = 0; j < pts[1].size(); ++j) {
      for (std::size_t i = 0; i < pts[0].size(); ++i) {
        const auto xi = geometry::face_point(d, face, {pts[0][i], pts[1][j]});
        const auto m = patch.eval(std::span<const double>(xi.data(), d));
        double ds = 0.0;
        if (nt == 1) {
          const int t = tdirs[0];
          ds = std::hypot(m.jac[t], m.jac[3 + t], m.jac[6 + t]);
        } else {
          const int a = tdirs[0], b = tdirs[1];
          const double c0 = m.jac[3 + a] * m.jac[6 + b] - m.jac[6 + a] * m.jac[3 + b];
          const double c1 = m.jac[6 + a] * m.jac[b] - m.jac[a] * m.jac[6 + b];
          const double c2 = m.jac[a] * m.jac[3 + b] - m.jac[3 + a] * m.jac[b];
          ds = std::sqrt(c0 * c0 + c1 * c1 + c2 * c2);
        }
        const double w = wts[0][i] * wts[1][j] * ds;
        measure += w;
        const auto tv = splines::tensor_eval(space, std::span<const double>(xi.data(), d));
        // Active functions on the face: those in the face layer of the box.
        const double gv = g(m.x);
        std::vector<std::pair<int, double>> act;
        int a = 0;
        for (int c = 0; c < tv.count[2]; ++c) {
          for (int b = 0; b < tv.count[1]; ++b) {
            for (int ii = 0; ii < tv.count[0]; ++ii, ++a) {
              const std::array<int, 3> mi{tv.first[0] + ii, tv.first[1] + b, tv.first[2] + c};
              const int layer = face % 2 ? space.shape()[dir] - 1 : 0;
              if (mi[dir] != layer || tv.values[a] == 0.0) continue;
              act.emplace_back(static_cast<int>(space.flat_index(mi)), tv.values[a]);
            }
          }
        }
        for (const auto& [la, va] : act) {
          const int ga = pos[l2g[la]];
          rhs[ga] += w * va * gv;
          for (const auto& [lb, vb] : act) local_mass[{ga, pos[l2g[lb]]}] += w * va * vb;
        }
      }
    }
    if (measure <= 1e-12 * std::max(1.0, extent)) {
      // Collapsed face: every function on it represents the same point.
      const auto xi = geometry::face_point(d, face, {0.5, 0.5});
      const double v = g(patch.eval(std::span<const double>(xi.data(), d)).x);
      for (int i : dofs) {
        const int p = pos[l2g[i]];
        if (!fixed[p]) out[p] = v;
        fixed[p] = 1;
      }
      continue;
    }
    for (const auto& [key, v] : local_mass) trip.emplace_back(key.first, key.second, v);
    for (int i : dofs) projected[pos[l2g[i]]] = 1;
  }

  // Solve the projection on functions touched by non-degenerate faces.
  std::vector<int> sel;
  std::vector<int> sel_pos(nb, -1);
  for (int i = 0; i < nb; ++i) {
    if (projected[i]) {
      sel_pos[i] = static_cast<int>(sel.size());
      sel.push_back(i);
    }
  }
  if (!sel.empty()) {
    std::vector<Eigen::Triplet<double>> t2;
    for (const auto& t : trip) {
      if (sel_pos[t.row()] >= 0 && sel_pos[t.col()] >= 0) t2.emplace_back(sel_pos[t.row()], sel_pos[t.col()], t.value());
    }
    Eigen::SparseMatrix<double> a(static_cast<Eigen::Index>(sel.size()), static_cast<Eigen::Index>(sel.size()));
    a.setFromTriplets(t2.begin(), t2.end());
    Eigen::VectorXd b(static_cast<Eigen::Index>(sel.size()));
    for (std::size_t i = 0; i < sel.size(); ++i) b[static_cast<Eigen::Index>(i)] = rhs[sel[i]];
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(a);
    if (ldlt.info() != Eigen::Success) throw AssemblyError("boundary projection: singular boundary mass matrix");
    const Eigen::VectorXd x = ldlt.solve(b);
    for (std::size_t i = 0; i < sel.size(); ++i) out[sel[i]] = x[static_cast<Eigen::Index>(i)];
  }
  return out;
}

}  // namespace genalpha::assembly
