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

// Amplification matrix of the scalar modal problem and its spectrum.

#include <array>
#include <string>
#include <vector>

#include "genalpha/integrator/params.hpp"
#include "genalpha/linalg/eigen_small.hpp"

namespace genalpha::spectral {

using integrator::BlockParams;
using integrator::GenAlphaParams;
using linalg::Complex;
using linalg::Mat3;

/// G(Theta) for the scaled state (D_0, tau D_1, tau^2 D_2, ...), Theta = tau^2 lambda,
/// undamped and unforced. Row-major 3k x 3k, upper block triangular.
class AmplificationMatrix {
 public:
  AmplificationMatrix(const GenAlphaParams& params, double theta);

  int size() const noexcept { return n_; }
  double theta() const noexcept { return theta_; }
  const std::vector<double>& matrix() const noexcept { return g_; }
  double operator()(int i, int j) const { return g_[static_cast<std::size_t>(i * n_ + j)]; }
  /// Diagonal block Lambda_j (0-based j).
  Mat3 block(int j) const;
  /// Off-diagonal 3x3 block (i < j), the coupling Xi.
  Mat3 coupling(int i, int j) const;

 private:
  int n_;
  double theta_;
  std::vector<double> g_;
};

AmplificationMatrix build_G(const GenAlphaParams& params, double theta);

/// The closed-form diagonal blocks: Lambda_1-type (alpha_f = 1) for j < k and
/// Lambda_k-type for the last block.
Mat3 lambda_block(const BlockParams& b, bool last, double theta);

/// For k = 2: the matrices A and B of A U_{n+1} = B U_n, built row by row
/// from the scheme equations (6 x 6, row-major).
std::vector<double> k2_matrix_a(const GenAlphaParams& params, double theta);
std::vector<double> k2_matrix_b(const GenAlphaParams& params, double theta);

/// Characteristic polynomial c3 l^3 + c2 l^2 + c1 l + c0 of a block, in the
/// closed form for Lambda_1-type (last = false) or Lambda_k-type blocks.
std::array<double, 4> characteristic_polynomial(const BlockParams& b, bool last, double theta);
/// Monic characteristic polynomial of any 3x3 matrix, {c0, c1, c2, 1}.
std::array<double, 4> characteristic_polynomial(const Mat3& a);
/// Discriminant of c3 l^3 + c2 l^2 + c1 l + c0 (coefficients in that order: c0..c3).
double discriminant(const std::array<double, 4>& c);

struct SpectrumSample {
  double theta = 0.0;
  std::vector<Complex> eigenvalues;  ///< grouped by block, three per block
  double rho = 0.0;                  ///< spectral radius
  double max_residual = 0.0;         ///< largest |p_j(lambda)| / scale in the block polynomials
};

/// Eigenvalues of the diagonal blocks, checked against their characteristic polynomials.
SpectrumSample spectrum(const GenAlphaParams& params, double theta);
/// Spectrum of a single block (0-based).
std::array<Complex, 3> block_spectrum(const GenAlphaParams& params, int block, double theta);

struct BifurcationResult {
  bool found = false;
  double theta = 0.0;          ///< numeric bifurcation limit
  double closed_form = 0.0;    ///< Omega_b from the closed form
  double root_magnitude = 0.0; ///< |lambda| of the coalesced pair at theta
};

/// Limit where the principal complex pair of block j becomes real: a sign
/// change of the block discriminant (refined by bisection), or a tangential
/// zero (refined by golden-section search) when the roots touch without
/// crossing. Searches (0, 20].
BifurcationResult find_bifurcation(const GenAlphaParams& params, int block);

struct StabilityResult {
  std::vector<double> block_theta_max;  ///< numeric per-block limits
  double theta_max = 0.0;               ///< minimum over blocks
  std::vector<double> closed_form;      ///< closed-form Omega_s per block
  std::vector<std::string> diagnostics; ///< closed-form discrepancies above 1 %
};

/// Largest Theta with spectral radius <= 1 + 1e-10 per block: scan with step
/// 1e-3 up to 20, then bisection to 1e-10.
StabilityResult find_stability(const GenAlphaParams& params);

std::vector<SpectrumSample> spectrum_sweep(const GenAlphaParams& params, const std::vector<double>& thetas);

}  // namespace genalpha::spectral
