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

// Spline parametrizations and conforming multi-patch spaces.

#include <array>
#include <string>
#include <vector>

#include "genalpha/splines.hpp"

namespace genalpha::geometry {

using Point = std::array<double, 3>;

/// Map value and Jacobian at a parametric point. jac is row-major 3x3 with
/// jac[3*i + j] = d x_i / d xi_j; unused rows/columns are zero.
struct MapEval {
  Point x{0.0, 0.0, 0.0};
  std::array<double, 9> jac{};
  double det = 0.0;
};

/// F(xi) = sum_i C_i B_i(xi) from [0,1]^d to R^d. Immutable.
class Patch {
 public:
  Patch(splines::SplineSpace space, std::vector<Point> control_points, bool singular = false);

  int dim() const noexcept { return space_.dim(); }
  const splines::SplineSpace& space() const noexcept { return space_; }
  const std::vector<Point>& control_points() const noexcept { return cps_; }
  /// Set for parametrizations whose Jacobian vanishes on part of the boundary.
  bool singular() const noexcept { return singular_; }

  /// Map and Jacobian, no validation.
  MapEval eval(std::span<const double> xi) const;

 private:
  splines::SplineSpace space_;
  std::vector<Point> cps_;
  bool singular_;
};

/// Evaluates the map; throws GeometryError when |J| <= 0 at a point strictly
/// inside the parameter domain of a patch not flagged singular.
MapEval eval_map(const Patch& patch, std::span<const double> xi);

struct GeometryReport {
  double delta = 0.0;    ///< minimum sampled |J|
  double max_det = 0.0;  ///< maximum sampled |J|
  bool singular = false;
};

/// Samples |J| on a grid that includes the parameter-domain boundary:
/// `per_span` uniformly spaced points per geometry knot span and direction,
/// endpoints included. `singular` is set when delta <= threshold * max_det.
GeometryReport validate_geometry(const Patch& patch, int per_span = 8, double threshold = 1e-10);

/// Face numbering: face = 2 * direction + side (side 0 at xi_dir = 0).
/// Orientation bits for the map from face a to face b coordinates: for 2D,
/// bit 0 reverses the single face coordinate; for 3D, bit 2 swaps the two
/// face coordinates first, then bit 0 / bit 1 reverse the first / second.
struct Interface {
  int patch_a = 0;
  int face_a = 0;
  int patch_b = 0;
  int face_b = 0;
  int orientation = 0;
  bool operator==(const Interface&) const = default;
};

struct Geometry {
  std::string name;
  std::vector<Patch> patches;
  std::vector<Interface> interfaces;
  int dim() const { return patches.empty() ? 0 : patches.front().dim(); }
};

/// Maps face-a parameters (first, second tangential coordinate in increasing
/// direction order) to face-b parameters.
std::array<double, 2> map_face_coords(int dim, int orientation, std::array<double, 2> st);
/// Full parametric point on `face` of a d-dimensional cube from face coordinates.
std::array<double, 3> face_point(int dim, int face, std::array<double, 2> st);

/// Global spline space on a conforming multi-patch domain. All patches use
/// the same degree; each patch has its own tensor-product discretization
/// space, glued across interfaces by identifying matching basis functions.
class MultiPatchSpace {
 public:
  MultiPatchSpace(Geometry geometry, std::vector<splines::SplineSpace> spaces);

  const Geometry& geometry() const noexcept { return geom_; }
  int num_patches() const noexcept { return static_cast<int>(spaces_.size()); }
  int dim() const noexcept { return geom_.dim(); }
  const Patch& patch(int r) const { return geom_.patches[static_cast<std::size_t>(r)]; }
  const splines::SplineSpace& space(int r) const { return spaces_[static_cast<std::size_t>(r)]; }
  /// G^(r): local (co-lexicographic) index to global index.
  const std::vector<int>& local_to_global(int r) const { return l2g_[static_cast<std::size_t>(r)]; }

  int size() const noexcept { return n_global_; }
  /// n_l: number of patches whose local functions map to global index l.
  int multiplicity(int l) const { return mult_[static_cast<std::size_t>(l)]; }
  const std::vector<int>& multiplicities() const noexcept { return mult_; }
  int n_adj() const noexcept { return n_adj_; }

  /// (patch, face) pairs not covered by an interface.
  const std::vector<std::pair<int, int>>& boundary_faces() const noexcept { return bfaces_; }
  /// Global indices of functions that do not vanish on a boundary face.
  const std::vector<int>& boundary_dofs() const noexcept { return bdofs_; }
  bool is_boundary(int l) const { return is_bdof_[static_cast<std::size_t>(l)] != 0; }

 private:
  Geometry geom_;
  std::vector<splines::SplineSpace> spaces_;
  std::vector<std::vector<int>> l2g_;
  std::vector<int> mult_;
  int n_global_ = 0;
  int n_adj_ = 0;
  std::vector<std::pair<int, int>> bfaces_;
  std::vector<int> bdofs_;
  std::vector<char> is_bdof_;
};

/// Uniform degree-p, n_sub-span discretization on every patch; checks
/// conformity and throws ConformityError naming the offending patch pair.
MultiPatchSpace build_multipatch(Geometry geometry, int degree, int n_sub);

/// Local indices of the functions that do not vanish on `face`, ordered
/// co-lexicographically over the face's tangential directions.
std::vector<int> face_dofs(const splines::SplineSpace& space, int face);

// Built-in generators.
Geometry unit_box(int dim);
/// Axis-aligned box [0,L0] x ... (affine map).
Geometry box(std::span<const double> lengths);
/// Quarter annulus r in [r_in, r_out], polynomial degree 2 in both directions;
/// xi_0 is radial, xi_1 angular.
Geometry quarter_annulus(double r_in = 1.0, double r_out = 2.0);
/// Quarter disk of radius r with the face xi_0 = 0 collapsed to the origin.
Geometry disk_sector(double radius = 1.0);
/// n quadratic patches around a common vertex at the origin (N_adj = n).
/// Patch r has straight edges along the rays at angles 2 pi r / n and
/// 2 pi (r+1) / n and outer edges bulged outward by `bulge`, so no patch map
/// is affine.
Geometry ring(int n, double bulge = 0.25);
/// Affine version of ring(): n parallelograms around the origin.
Geometry star(int n);
/// Annulus r in [r_in, r_out] split into n curved sectors glued end to end
/// (N_adj = 2); xi_0 radial.
Geometry annulus(int n, double r_in = 1.0, double r_out = 2.0);
/// Unit square as two patches split at x = 0.5.
Geometry two_patch_square();
/// Names: unit-interval, unit-square, unit-cube, quarter-annulus,
/// disk-sector, ring-<n>, star-<n>, annulus-<n>, two-patch-square.
Geometry builtin_geometry(const std::string& name);

// JSON documents: {"patches": [{"degrees", "knots", "control_points",
// "singular"}], "interfaces": [{"patch_a", "face_a", "patch_b", "face_b",
// "orientation"}]}.
Geometry geometry_from_json(const std::string& text);
std::string geometry_to_json(const Geometry& g);
Geometry load_geometry(const std::string& path);
void save_geometry(const Geometry& g, const std::string& path);

}  // namespace genalpha::geometry
