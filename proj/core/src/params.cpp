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

#include "genalpha/integrator/params.hpp"

#include <cmath>
#include <string>

#include "genalpha/error.hpp"

namespace genalpha::integrator {

double omega_b_closed_form(double b, double s, bool last, BlockFormulas formulas) {
  if (last || formulas == BlockFormulas::derived) return 2.0 + 2.0 * b + s - s * b * b;
  return 2.0 - 2.0 * b - s + s * b * b;
}

double omega_s_closed_form(double b, double s, bool last) {
  if (last) {
    return 4.0 * (1.0 + b) * (2.0 - b * s + s) * (3.0 - b + s - 3.0 * b * s) /
           (2.0 * (5.0 - b * b) + (5.0 - 13.0 * b - b * b + b * b * b) * s - std::pow(1.0 - b, 3) * s * s);
  }
  return 4.0 * (1.0 - b) * (2.0 - b * s - s) * (3.0 + b - s - 3.0 * b * s) /
         (2.0 * (5.0 - b * b) + (5.0 - 13.0 * b - b * b - b * b * b) * s - std::pow(1.0 + b, 3) * s * s);
}

namespace {

BlockParams make_block(double b, double s, bool last, BlockFormulas formulas) {
  BlockParams p;
  p.rho_b = b;
  p.rho_s = s;
  if (last) {
    p.alpha = (2.0 + s - b * s) / ((1.0 + b) * (1.0 + s));
    p.beta = (-5.0 - 3.0 * b - 4.0 * s + 2.0 * b * s + 2.0 * b * b * s - s * s + b * s * s) /
             ((1.0 + b) * (1.0 + b) * (-2.0 - 3.0 * s + b * s - s * s + b * s * s));
    p.alpha_f = 0.0;
  } else if (formulas == BlockFormulas::derived) {
    p.alpha = (2.0 + s - b * s) / ((1.0 + b) * (1.0 + s));
    p.beta = (b - 1.0) * (b * s - 1.0) * (b * s - 1.0) / ((1.0 + b) * (1.0 + b) * (1.0 + s) * (b * s - s - 2.0));
    p.alpha_f = 1.0;
  } else {
    p.alpha = (2.0 - (1.0 + b) * s) / ((b - 1.0) * (s - 1.0));
    p.beta = (1.0 + b) * (-1.0 + b * s) * (-1.0 + b * s) / ((-1.0 + b) * (-1.0 + b) * (-1.0 + s) * (-2.0 + s + b * s));
    p.alpha_f = 1.0;
  }
  // gamma = 1/2 - alpha_f + alpha, with alpha re-derived from gamma so that
  // gamma - alpha + alpha_f == 1/2 holds in floating point.
  const double shift = 0.5 - p.alpha_f;
  p.gamma = shift + p.alpha;
  p.alpha = p.gamma - shift;
  for (int i = 0; i < 8 && (p.gamma - p.alpha) + p.alpha_f != 0.5; ++i) {
    p.alpha = std::nextafter(p.alpha, (p.gamma - p.alpha) + p.alpha_f > 0.5 ? INFINITY : -INFINITY);
  }
  p.omega_b = omega_b_closed_form(b, s, last, formulas);
  p.omega_s = omega_s_closed_form(b, s, last);
  return p;
}

}  // namespace

GenAlphaParams compute_params(int k, std::span<const double> rho_b, std::span<const double> rho_s,
                              BlockFormulas formulas) {
  if (k < 1) throw ParameterError("order index k must be at least 1, got " + std::to_string(k));
  if (static_cast<int>(rho_b.size()) != k || static_cast<int>(rho_s.size()) != k) {
    throw ParameterError("need " + std::to_string(k) + " values of rho_b and rho_s");
  }
  GenAlphaParams g;
  g.k = k;
  g.formulas = formulas;
  for (int j = 0; j < k; ++j) {
    const double b = rho_b[j];
    const double s = rho_s[j];
    if (!(b >= 0.0 && b < 1.0) || !(s >= 0.0 && s < 1.0)) {
      throw ParameterError("block " + std::to_string(j + 1) + ": rho values must lie in [0, 1)");
    }
    if (s > b) throw ParameterError("block " + std::to_string(j + 1) + ": rho_s must not exceed rho_b");
    g.blocks.push_back(make_block(b, s, j == k - 1, formulas));
  }
  return g;
}

GenAlphaParams compute_params(int k, double rho, BlockFormulas formulas) {
  if (k < 1) throw ParameterError("order index k must be at least 1, got " + std::to_string(k));
  std::vector<double> r(static_cast<std::size_t>(k), rho);
  return compute_params(k, r, r, formulas);
}

}  // namespace genalpha::integrator
