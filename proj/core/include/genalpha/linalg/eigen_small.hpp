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

// Eigenvalues of small dense nonsymmetric matrices.

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace genalpha::linalg {

using Complex = std::complex<double>;
using Mat3 = std::array<double, 9>;  // row-major

/// Eigenvalues of a row-major n x n matrix by Hessenberg QR. Complex pairs
/// are returned as exact conjugates, positive imaginary part first.
std::vector<Complex> eigenvalues(std::span<const double> a, int n);

std::array<Complex, 3> eigenvalues3(const Mat3& a);

/// Eigenvalues of an upper block triangular matrix with square diagonal
/// blocks of size `block`: the union of the diagonal-block spectra.
std::vector<Complex> block_triangular_eigenvalues(std::span<const double> a, int n, int block);

/// Largest modulus.
double spectral_radius(std::span<const Complex> eigs);

}  // namespace genalpha::linalg
