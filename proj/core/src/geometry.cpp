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

#include "genalpha/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <string>

#include "genalpha/error.hpp"

namespace genalpha::geometry {

using splines::KnotVector;
using splines::SplineSpace;

Patch::Patch(SplineSpace space, std::vector<Point> control_points, bool singular)
    : space_(std::move(space)), cps_(std::move(control_points)), singular_(singular) {
  if (cps_.size() != space_.size()) {
    throw GeometryError("patch: " + std::to_string(cps_.size()) + " control points for a space of dimension " +
                        std::to_string(space_.size()));
  }
}

MapEval Patch::eval(std::span<const double> xi) const {
  const int d = dim();
  if (static_cast<int>(xi.size()) != d) throw UsageError("eval_map: point dimension mismatch");
  std::array<int, 3> first{0, 0, 0};
  std::array<int, 3> count{1, 1, 1};
  std::array<std::vector<double>, 3> val;
  std::array<std::vector<double>, 3> der;
  for (int k = 0; k < 3; ++k) {
    if (k >= d) {
      val[k] = {1.0};
      der[k] = {0.0};
      continue;
    }
    const KnotVector& kv = space_.direction(k);
    const int p = kv.degree();
    const int span = kv.find_span(xi[k]);
    std::vector<double> buf(2 * (p + 1));
    splines::eval_basis_derivatives(kv, span, xi[k], 1, buf);
    first[k] = span - p;
    count[k] = p + 1;
    val[k].assign(buf.begin(), buf.begin() + p + 1);
    der[k].assign(buf.begin() + p + 1, buf.end());
  }
  MapEval m;
  for (int c = 0; c < count[2]; ++c) {
    for (int b = 0; b < count[1]; ++b) {
      for (int a = 0; a < count[0]; ++a) {
        const Point& cp = cps_[space_.flat_index({first[0] + a, first[1] + b, first[2] + c})];
        const double n0 = val[0][a] * val[1][b] * val[2][c];
        const std::array<double, 3> dn{der[0][a] * val[1][b] * val[2][c], val[0][a] * der[1][b] * val[2][c],
                                       val[0][a] * val[1][b] * der[2][c]};
        for (int i = 0; i < 3; ++i) {
          m.x[i] += cp[i] * n0;
          for (int j = 0; j < d; ++j) m.jac[3 * i + j] += cp[i] * dn[j];
        }
      }
    }
  }
  const auto& J = m.jac;
  if (d == 1) {
    m.det = J[0];
  } else if (d == 2) {
    m.det = J[0] * J[4] - J[1] * J[3];
  } else {
    m.det = J[0] * (J[4] * J[8] - J[5] * J[7]) - J[1] * (J[3] * J[8] - J[5] * J[6]) +
            J[2] * (J[3] * J[7] - J[4] * J[6]);
  }
  return m;
}

MapEval eval_map(const Patch& patch, std::span<const double> xi) {
  MapEval m = patch.eval(xi);
  if (!(m.det > 0.0) && !patch.singular()) {
    const bool interior = std::all_of(xi.begin(), xi.end(), [](double v) { return v > 0.0 && v < 1.0; });
    if (interior) {
      throw GeometryError("nonpositive Jacobian determinant " + std::to_string(m.det) +
                          " inside a patch not flagged singular");
    }
  }
  return m;
}

GeometryReport validate_geometry(const Patch& patch, int per_span, double threshold) {
  const int d = patch.dim();
  std::array<std::vector<double>, 3> pts;
  for (int k = 0; k < 3; ++k) {
    if (k >= d) {
      pts[k] = {0.0};
      continue;
    }
    const auto& br = patch.space().direction(k).breakpoints();
    for (std::size_t e = 0; e + 1 < br.size(); ++e) {
      for (int q = 0; q < per_span; ++q) pts[k].push_back(br[e] + (br[e + 1] - br[e]) * q / per_span);
    }
    pts[k].push_back(1.0);
  }
  GeometryReport rep;
  rep.delta = INFINITY;
  std::array<double, 3> xi{};
  for (double z : pts[2]) {
    for (double y : pts[1]) {
      for (double x : pts[0]) {
        xi = {x, y, z};
        const double det = patch.eval(std::span<const double>(xi.data(), static_cast<std::size_t>(d))).det;
        rep.delta = std::min(rep.delta, det);
        rep.max_det = std::max(rep.max_det, det);
      }
    }
  }
  rep.singular = rep.delta <= threshold * rep.max_det;
  return rep;
}

std::array<double, 2> map_face_coords(int dim, int orientation, std::array<double, 2> st) {
  if (dim == 2) {
    if (orientation & 1) st[0] = 1.0 - st[0];
  } else if (dim == 3) {
    if (orientation & 4) std::swap(st[0], st[1]);
    if (orientation & 1) st[0] = 1.0 - st[0];
    if (orientation & 2) st[1] = 1.0 - st[1];
  }
  return st;
}

std::array<double, 3> face_point(int dim, int face, std::array<double, 2> st) {
  std::array<double, 3> p{0.0, 0.0, 0.0};
  const int dir = face / 2;
  int t = 0;
  for (int k = 0; k < dim; ++k) p[k] = k == dir ? static_cast<double>(face % 2) : st[t++];
  return p;
}

std::vector<int> face_dofs(const SplineSpace& space, int face) {
  const int d = space.dim();
  const int dir = face / 2;
  if (face < 0 || dir >= d) throw UsageError("face index " + std::to_string(face) + " out of range");
  const auto shape = space.shape();
  std::array<int, 3> lo{0, 0, 0};
  std::array<int, 3> hi = shape;
  lo[dir] = face % 2 ? shape[dir] - 1 : 0;
  hi[dir] = lo[dir] + 1;
  std::vector<int> out;
  for (int c = lo[2]; c < hi[2]; ++c) {
    for (int b = lo[1]; b < hi[1]; ++b) {
      for (int a = lo[0]; a < hi[0]; ++a) out.push_back(static_cast<int>(space.flat_index({a, b, c})));
    }
  }
  return out;
}

namespace {

std::vector<int> tangential_dirs(int dim, int face) {
  std::vector<int> t;
  for (int k = 0; k < dim; ++k) {
    if (k != face / 2) t.push_back(k);
  }
  return t;
}

bool knots_match(const KnotVector& a, const KnotVector& b, bool reversed) {
  const KnotVector bb = reversed ? b.reversed() : b;
  if (a.degree() != bb.degree() || a.knots().size() != bb.knots().size()) return false;
  for (std::size_t i = 0; i < a.knots().size(); ++i) {
    if (std::abs(a[i] - bb[i]) > 1e-12) return false;
  }
  return true;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

MultiPatchSpace::MultiPatchSpace(Geometry geometry, std::vector<SplineSpace> spaces)
    : geom_(std::move(geometry)), spaces_(std::move(spaces)) {
  const int np = static_cast<int>(geom_.patches.size());
  if (np == 0) throw GeometryError("multi-patch space: no patches");
  if (static_cast<int>(spaces_.size()) != np) throw UsageError("multi-patch space: one space per patch required");
  const int d = geom_.dim();
  for (int r = 0; r < np; ++r) {
    if (geom_.patches[r].dim() != d || spaces_[r].dim() != d) {
      throw GeometryError("multi-patch space: patches of mixed dimension");
    }
  }
  std::vector<int> offset(np + 1, 0);
  for (int r = 0; r < np; ++r) offset[r + 1] = offset[r] + static_cast<int>(spaces_[r].size());
  UnionFind uf(offset[np]);
  std::set<std::pair<int, int>> covered;

  for (const Interface& f : geom_.interfaces) {
    const int a = f.patch_a;
    const int b = f.patch_b;
    if (a < 0 || a >= np || b < 0 || b >= np || f.face_a < 0 || f.face_a >= 2 * d || f.face_b < 0 ||
        f.face_b >= 2 * d) {
      throw ConformityError(a, b, "interface references a nonexistent patch or face");
    }
    covered.insert({a, f.face_a});
    covered.insert({b, f.face_b});
    const auto ta = tangential_dirs(d, f.face_a);
    const auto tb = tangential_dirs(d, f.face_b);
    const bool swap = d == 3 && (f.orientation & 4);
    // Tangential direction of b matched with each tangential direction of a.
    std::vector<int> match(ta.size());
    std::vector<bool> rev(ta.size());
    for (std::size_t q = 0; q < ta.size(); ++q) {
      const std::size_t qb = swap ? 1 - q : q;
      match[q] = tb[qb];
      rev[q] = (f.orientation >> qb) & 1;
    }
    for (std::size_t q = 0; q < ta.size(); ++q) {
      if (!knots_match(spaces_[a].direction(ta[q]), spaces_[b].direction(match[q]), rev[q])) {
        throw ConformityError(a, b, "interface knot vectors do not match");
      }
    }
    // Geometry traces must coincide.
    const int ns = 7;
    double scale = 0.0;
    for (const auto& cp : geom_.patches[a].control_points()) {
      scale = std::max({scale, std::abs(cp[0]), std::abs(cp[1]), std::abs(cp[2])});
    }
    for (int i = 0; i < (d > 1 ? ns : 1); ++i) {
      for (int j = 0; j < (d > 2 ? ns : 1); ++j) {
        const std::array<double, 2> st{(i + 0.5) / ns, (j + 0.5) / ns};
        const auto pa = face_point(d, f.face_a, st);
        const auto pb = face_point(d, f.face_b, map_face_coords(d, f.orientation, st));
        const auto xa = geom_.patches[a].eval(std::span<const double>(pa.data(), d)).x;
        const auto xb = geom_.patches[b].eval(std::span<const double>(pb.data(), d)).x;
        for (int c = 0; c < 3; ++c) {
          if (std::abs(xa[c] - xb[c]) > 1e-10 * (1.0 + scale)) {
            throw ConformityError(a, b, "interface geometry traces do not coincide");
          }
        }
      }
    }
    // Identify matching functions.
    const auto sa = spaces_[a].shape();
    const auto sb = spaces_[b].shape();
    const auto fa = face_dofs(spaces_[a], f.face_a);
    for (int la : fa) {
      const auto ma = spaces_[a].multi_index(static_cast<std::size_t>(la));
      std::array<int, 3> mb{0, 0, 0};
      mb[f.face_b / 2] = f.face_b % 2 ? sb[f.face_b / 2] - 1 : 0;
      for (std::size_t q = 0; q < ta.size(); ++q) {
        const int i = ma[ta[q]];
        mb[match[q]] = rev[q] ? sa[ta[q]] - 1 - i : i;
      }
      const int lb = static_cast<int>(spaces_[b].flat_index(mb));
      uf.unite(offset[a] + la, offset[b] + lb);
    }
  }

  // Number roots in order of first appearance.
  std::vector<int> gid(offset[np], -1);
  l2g_.resize(np);
  std::vector<std::set<int>> owners;
  for (int r = 0; r < np; ++r) {
    l2g_[r].resize(spaces_[r].size());
    for (int i = 0; i < static_cast<int>(spaces_[r].size()); ++i) {
      const int root = uf.find(offset[r] + i);
      if (gid[root] < 0) {
        gid[root] = n_global_++;
        owners.emplace_back();
      }
      l2g_[r][i] = gid[root];
      owners[gid[root]].insert(r);
    }
  }
  mult_.resize(n_global_);
  for (int l = 0; l < n_global_; ++l) {
    mult_[l] = static_cast<int>(owners[l].size());
    n_adj_ = std::max(n_adj_, mult_[l]);
  }
  is_bdof_.assign(n_global_, 0);
  for (int r = 0; r < np; ++r) {
    for (int face = 0; face < 2 * d; ++face) {
      if (covered.count({r, face})) continue;
      bfaces_.emplace_back(r, face);
      for (int i : face_dofs(spaces_[r], face)) is_bdof_[l2g_[r][i]] = 1;
    }
  }
  for (int l = 0; l < n_global_; ++l) {
    if (is_bdof_[l]) bdofs_.push_back(l);
  }
}

MultiPatchSpace build_multipatch(Geometry geometry, int degree, int n_sub) {
  std::vector<SplineSpace> spaces;
  for (const auto& p : geometry.patches) spaces.push_back(SplineSpace::uniform(p.dim(), degree, n_sub));
  return MultiPatchSpace(std::move(geometry), std::move(spaces));
}

Geometry box(std::span<const double> lengths) {
  const int d = static_cast<int>(lengths.size());
  SplineSpace s = SplineSpace::uniform(d, 1, 1);
  std::vector<Point> cps(s.size(), Point{0.0, 0.0, 0.0});
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto m = s.multi_index(i);
    for (int k = 0; k < d; ++k) cps[i][k] = m[k] * lengths[k];
  }
  Geometry g;
  g.name = "box";
  g.patches.emplace_back(std::move(s), std::move(cps));
  return g;
}

Geometry unit_box(int dim) {
  if (dim < 1 || dim > 3) throw UsageError("unit_box: dimension must be 1, 2 or 3");
  const std::array<double, 3> ones{1.0, 1.0, 1.0};
  Geometry g = box(std::span<const double>(ones.data(), dim));
  g.name = dim == 1 ? "unit-interval" : dim == 2 ? "unit-square" : "unit-cube";
  return g;
}

namespace {

Geometry annulus_like(double r_in, double r_out, bool singular, const char* name) {
  SplineSpace s = SplineSpace::uniform(2, 2, 1);
  const std::array<Point, 3> arc{Point{1.0, 0.0, 0.0}, Point{1.0, 1.0, 0.0}, Point{0.0, 1.0, 0.0}};
  std::vector<Point> cps(s.size());
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) {
      const double r = r_in + (r_out - r_in) * i / 2.0;
      cps[s.flat_index({i, j, 0})] = {r * arc[j][0], r * arc[j][1], 0.0};
    }
  }
  Geometry g;
  g.name = name;
  g.patches.emplace_back(std::move(s), std::move(cps), singular);
  return g;
}

}  // namespace

Geometry quarter_annulus(double r_in, double r_out) {
  if (!(r_in > 0.0 && r_out > r_in)) throw GeometryError("quarter_annulus: need 0 < r_in < r_out");
  return annulus_like(r_in, r_out, false, "quarter-annulus");
}

Geometry disk_sector(double radius) {
  if (!(radius > 0.0)) throw GeometryError("disk_sector: radius must be positive");
  return annulus_like(0.0, radius, true, "disk-sector");
}

namespace {

// Unit vector at angle t, snapped so that shared rays are bitwise identical.
Point direction(double t) {
  Point e{std::cos(t), std::sin(t), 0.0};
  for (double& v : e) {
    if (std::abs(v) < 1e-15) v = 0.0;
  }
  return e;
}

}  // namespace

Geometry annulus(int n, double r_in, double r_out) {
  if (n < 3) throw GeometryError("annulus: need at least 3 patches");
  if (!(r_in > 0.0 && r_out > r_in)) throw GeometryError("annulus: need 0 < r_in < r_out");
  Geometry g;
  g.name = "annulus-" + std::to_string(n);
  const double dt = 2.0 * std::numbers::pi / n;
  for (int r = 0; r < n; ++r) {
    // Quadratic arc: end points on the circle, middle point where the end tangents meet.
    const Point e0 = direction(dt * r);
    const Point e1 = direction(dt * (r + 1));
    const Point em = direction(dt * (r + 0.5));
    const double sm = 1.0 / std::cos(0.5 * dt);
    const std::array<Point, 3> arc{e0, Point{sm * em[0], sm * em[1], 0.0}, e1};
    SplineSpace s = SplineSpace::uniform(2, 2, 1);
    std::vector<Point> cps(s.size());
    for (int j = 0; j < 3; ++j) {
      for (int i = 0; i < 3; ++i) {
        const double rad = r_in + (r_out - r_in) * i / 2.0;
        cps[s.flat_index({i, j, 0})] = {rad * arc[j][0], rad * arc[j][1], 0.0};
      }
    }
    g.patches.emplace_back(std::move(s), std::move(cps));
    g.interfaces.push_back({r, 3, (r + 1) % n, 2, 0});
  }
  return g;
}

Geometry ring(int n, double bulge) {
  if (n < 3) throw GeometryError("ring: need at least 3 patches");
  if (!(bulge > -0.5 && bulge < 1.0)) throw GeometryError("ring: bulge must lie in (-0.5, 1)");
  Geometry g;
  g.name = "ring-" + std::to_string(n);
  for (int r = 0; r < n; ++r) {
    const Point e0 = direction(2.0 * std::numbers::pi * r / n);
    const Point e1 = direction(2.0 * std::numbers::pi * (r + 1) / n);
    const Point d{e0[0] + e1[0], e0[1] + e1[1], 0.0};
    auto mid = [](const Point& a, const Point& b, double push) {
      // Midpoint of ab moved outward (away from the origin) by `push` times its radius.
      const double f = 0.5 * (1.0 + push);
      return Point{f * (a[0] + b[0]), f * (a[1] + b[1]), 0.0};
    };
    SplineSpace s = SplineSpace::uniform(2, 2, 1);
    std::vector<Point> cps(s.size());
    auto at = [&](int i, int j) -> Point& { return cps[s.flat_index({i, j, 0})]; };
    at(0, 0) = Point{0.0, 0.0, 0.0};
    at(2, 0) = e0;
    at(0, 2) = e1;
    at(2, 2) = d;
    // Shared edges stay straight; the outer edges bulge.
    at(1, 0) = Point{0.5 * e0[0], 0.5 * e0[1], 0.0};
    at(0, 1) = Point{0.5 * e1[0], 0.5 * e1[1], 0.0};
    at(2, 1) = mid(e0, d, bulge);
    at(1, 2) = mid(e1, d, bulge);
    // Bilinear Coons blend for the centre point.
    for (int c = 0; c < 2; ++c) {
      at(1, 1)[c] = 0.5 * (at(1, 0)[c] + at(0, 1)[c] + at(2, 1)[c] + at(1, 2)[c]) -
                    0.25 * (at(0, 0)[c] + at(2, 0)[c] + at(0, 2)[c] + at(2, 2)[c]);
    }
    g.patches.emplace_back(std::move(s), std::move(cps));
    g.interfaces.push_back({r, 0, (r + 1) % n, 2, 0});
  }
  return g;
}

Geometry star(int n) {
  if (n < 3) throw GeometryError("star: need at least 3 patches");
  Geometry g;
  g.name = "star-" + std::to_string(n);
  for (int r = 0; r < n; ++r) {
    const Point e0 = direction(2.0 * std::numbers::pi * r / n);
    const Point e1 = direction(2.0 * std::numbers::pi * (r + 1) / n);
    SplineSpace s = SplineSpace::uniform(2, 1, 1);
    std::vector<Point> cps{Point{0.0, 0.0, 0.0}, e0, e1, Point{e0[0] + e1[0], e0[1] + e1[1], 0.0}};
    g.patches.emplace_back(std::move(s), std::move(cps));
    g.interfaces.push_back({r, 0, (r + 1) % n, 2, 0});
  }
  return g;
}

Geometry two_patch_square() {
  Geometry g;
  g.name = "two-patch-square";
  for (int r = 0; r < 2; ++r) {
    SplineSpace s = SplineSpace::uniform(2, 1, 1);
    const double x0 = 0.5 * r;
    std::vector<Point> cps{Point{x0, 0.0, 0.0}, Point{x0 + 0.5, 0.0, 0.0}, Point{x0, 1.0, 0.0},
                           Point{x0 + 0.5, 1.0, 0.0}};
    g.patches.emplace_back(std::move(s), std::move(cps));
  }
  g.interfaces.push_back({0, 1, 1, 0, 0});
  return g;
}

Geometry builtin_geometry(const std::string& name) {
  if (name == "unit-interval") return unit_box(1);
  if (name == "unit-square") return unit_box(2);
  if (name == "unit-cube") return unit_box(3);
  if (name == "quarter-annulus") return quarter_annulus();
  if (name == "disk-sector") return disk_sector();
  if (name == "two-patch-square") return two_patch_square();
  for (const std::string prefix : {"ring-", "star-", "annulus-"}) {
    if (name.rfind(prefix, 0) != 0) continue;
    try {
      std::size_t used = 0;
      const int n = std::stoi(name.substr(prefix.size()), &used);
      if (used != name.size() - prefix.size()) continue;
      if (prefix == "ring-") return ring(n);
      if (prefix == "star-") return star(n);
      return annulus(n);
    } catch (const std::logic_error&) {
    }
  }
  throw ConfigError("unknown geometry '" + name + "'");
}

}  // namespace genalpha::geometry
