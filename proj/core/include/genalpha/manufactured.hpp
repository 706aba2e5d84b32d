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

// Separable exact solutions u(x, t) = sum_i S_i(x) T_i(t) of
// u_tt + a0 u_t + a1 L u_t + L u = f with L = -omega^2 Laplacian.

#include <functional>
#include <string>
#include <vector>

#include "genalpha/geometry.hpp"

namespace genalpha::manufactured {

/// T(t) = a cos(c t) + b sin(c t) + q0 + q1 t.
struct Temporal {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double q0 = 0.0;
  double q1 = 0.0;
  /// n-th derivative.
  double derivative(int n, double t) const;
  double operator()(double t) const { return derivative(0, t); }
  bool trigonometric_only() const noexcept { return q0 == 0.0 && q1 == 0.0; }
};

struct SpatialField {
  std::function<double(const geometry::Point&)> value;
  std::function<double(const geometry::Point&)> laplacian;
};

struct SeparableTerm {
  SpatialField space;
  Temporal time;
};

struct ManufacturedSolution {
  std::string name;
  double omega = 1.0;  ///< wave-speed factor in L
  std::vector<SeparableTerm> terms;

  /// d^n u / dt^n at (x, t).
  double value(const geometry::Point& x, double t, int n = 0) const;
  /// Forcing for Rayleigh damping coefficients (a0, a1).
  double forcing(const geometry::Point& x, double t, double a0 = 0.0, double a1 = 0.0) const;
};

/// prod_i sin(10 pi x_i) [cos(c t) + sin(c t)], c = 10 pi sqrt(dim) omega:
/// a standing wave with zero forcing.
ManufacturedSolution standing_wave(int dim, double omega = 1.0);
/// sin(j pi x) cos(pi t) on the unit interval with omega = 1/j.
ManufacturedSolution dispersion_mode(int j);
/// prod_i sin(x_i) [cos(20 pi t) + sin(20 pi t)].
ManufacturedSolution smooth_sine(int dim, double omega = 1.0);
/// (1 + x + 2 y + 3 z)(1 + t / 2): exactly representable at p = 1.
ManufacturedSolution linear(int dim, double omega = 1.0);

/// Names: standing-wave, smooth-sine, linear, dispersion-<j>. Throws
/// ConfigError for anything else.
ManufacturedSolution by_name(const std::string& name, int dim, double omega = 1.0);

}  // namespace genalpha::manufactured
