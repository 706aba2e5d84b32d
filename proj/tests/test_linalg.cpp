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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "genalpha/error.hpp"
#include "genalpha/linalg/banded.hpp"
#include "genalpha/linalg/eigen_small.hpp"
#include "genalpha/linalg/kronecker.hpp"
#include "genalpha/linalg/pcg.hpp"
#include "genalpha/linalg/power_iteration.hpp"
#include "genalpha/linalg/sparse.hpp"

using namespace genalpha;
using namespace genalpha::linalg;

namespace {

// Gaussian elimination with partial pivoting on a row-major copy.
std::vector<double> dense_solve(std::vector<double> a, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    }
    for (int j = 0; j < n; ++j) std::swap(a[c * n + j], a[piv * n + j]);
    std::swap(b[c], b[piv]);
    for (int r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      for (int j = c; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int j = r + 1; j < n; ++j) s -= a[r * n + j] * x[j];
    x[r] = s / a[r * n + r];
  }
  return x;
}

// Random SPD banded matrix: diagonally dominant.
BandedSymmetric random_banded(int n, int b, std::mt19937& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  BandedSymmetric a(n, b);
  for (int i = 0; i < n; ++i) {
    for (int j = std::max(0, i - b); j < i; ++j) a.at(i, j) = d(rng);
  }
  for (int i = 0; i < n; ++i) a.at(i, i) = 2.0 * b + 1.0 + d(rng);
  return a;
}

std::vector<double> kron(const std::vector<double>& a, int na, const std::vector<double>& b, int nb) {
  // a (x) b, row-major.
  const int n = na * nb;
  std::vector<double> k(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j)
      for (int r = 0; r < nb; ++r)
        for (int s = 0; s < nb; ++s) k[(i * nb + r) * n + (j * nb + s)] = a[i * na + j] * b[r * nb + s];
  return k;
}

CsrMatrix laplacian_1d(int n) {
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i) {
    t.push_back({i, i, 2.0});
    if (i > 0) t.push_back({i, i - 1, -1.0});
    if (i + 1 < n) t.push_back({i, i + 1, -1.0});
  }
  return CsrMatrix::from_triplets(n, n, t);
}

}  // namespace

TEST(Csr, FromTripletsSumsDuplicates) {
  const auto a = CsrMatrix::from_triplets(2, 3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 1, 3.0}, {1, 0, -1.0}});
  EXPECT_EQ(a.coeff(0, 1), 4.0);
  EXPECT_EQ(a.coeff(1, 0), -1.0);
  EXPECT_EQ(a.coeff(0, 0), 0.0);
  const auto d = a.to_dense();
  const std::vector<double> x{1.0, 2.0, 3.0};
  std::vector<double> y(2);
  a.multiply(x, y);
  for (int i = 0; i < 2; ++i) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j) s += d[i * 3 + j] * x[j];
    EXPECT_DOUBLE_EQ(y[i], s);
  }
  const auto at = a.transpose();
  EXPECT_EQ(at.coeff(1, 0), 4.0);
}

TEST(Csr, SubmatrixAndAdd) {
  const auto l = laplacian_1d(5);
  const std::vector<int> idx{1, 2, 3};
  const auto s = l.submatrix(idx, idx);
  EXPECT_EQ(s.rows(), 3);
  EXPECT_EQ(s.coeff(0, 0), 2.0);
  EXPECT_EQ(s.coeff(0, 1), -1.0);
  const auto twice = l.add(l, 1.0);
  EXPECT_EQ(twice.coeff(2, 2), 4.0);
  EXPECT_EQ(l.asymmetry(), 0.0);
}

TEST(Banded, CholeskyMatchesDenseSolve) {
  std::mt19937 rng(5);
  for (int b : {0, 1, 3}) {
    const auto a = random_banded(17, b, rng);
    BandedCholesky chol(a);
    std::vector<double> rhs(17);
    for (auto& v : rhs) v = std::uniform_real_distribution<double>(-1, 1)(rng);
    auto x = rhs;
    chol.solve(x);
    const auto ref = dense_solve(a.to_dense(), rhs);
    for (int i = 0; i < 17; ++i) EXPECT_NEAR(x[i], ref[i], 1e-13);
  }
}

TEST(Banded, NonpositivePivotThrows) {
  BandedSymmetric a(2, 1);
  a.at(0, 0) = 1.0;
  a.at(1, 0) = 2.0;
  a.at(1, 1) = 1.0;
  EXPECT_THROW(BandedCholesky{a}, FactorizationError);
}

TEST(Kronecker, IdentityFactors) {
  BandedSymmetric i3(3, 0), i4(4, 0);
  for (int i = 0; i < 3; ++i) i3.at(i, i) = 1.0;
  for (int i = 0; i < 4; ++i) i4.at(i, i) = 1.0;
  KroneckerOperator k({i3, i4});
  std::vector<double> x(12);
  for (int i = 0; i < 12; ++i) x[i] = i - 3.5;
  auto y = x;
  k.solve_in_place(y);
  for (int i = 0; i < 12; ++i) EXPECT_EQ(y[i], x[i]);
}

TEST(Kronecker, SolveMatchesDenseKroneckerProduct) {
  std::mt19937 rng(9);
  const auto a0 = random_banded(3, 1, rng);
  const auto a1 = random_banded(4, 2, rng);
  const auto a2 = random_banded(2, 1, rng);
  KroneckerOperator k2({a0, a1});
  // First factor acts on the fastest index: matrix is A1 (x) A0.
  const auto dense2 = kron(a1.to_dense(), 4, a0.to_dense(), 3);
  std::vector<double> b(12);
  for (auto& v : b) v = std::uniform_real_distribution<double>(-1, 1)(rng);
  auto x = b;
  k2.solve_in_place(x);
  const auto ref = dense_solve(dense2, b);
  for (int i = 0; i < 12; ++i) EXPECT_NEAR(x[i], ref[i], 1e-13);
  std::vector<double> y(12);
  k2.apply(x, y);
  for (int i = 0; i < 12; ++i) EXPECT_NEAR(y[i], b[i], 1e-13);

  KroneckerOperator k3({a0, a1, a2});
  const auto dense3 = kron(a2.to_dense(), 2, dense2, 12);
  const auto kd = k3.to_dense();
  for (std::size_t i = 0; i < kd.size(); ++i) EXPECT_NEAR(kd[i], dense3[i], 1e-14);
}

TEST(Pcg, IdentityConvergesInOneIteration) {
  const auto id = CsrMatrix::identity(10);
  const LinearOperator a = [&](std::span<const double> x, std::span<double> y) { id.multiply(x, y); };
  const LinearOperator none = [](std::span<const double> x, std::span<double> y) {
    std::copy(x.begin(), x.end(), y.begin());
  };
  std::vector<double> b(10, 1.0), x(10);
  const auto rep = pcg(a, none, b, x);
  EXPECT_TRUE(rep.converged);
  EXPECT_EQ(rep.iterations, 1);
}

TEST(Pcg, ExactDiagonalPreconditioner) {
  std::vector<double> d{1.0, 4.0, 9.0, 16.0};
  const auto a = CsrMatrix::diagonal(d);
  const LinearOperator ap = [&](std::span<const double> x, std::span<double> y) { a.multiply(x, y); };
  const LinearOperator pinv = [&](std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] / d[i];
  };
  std::vector<double> b{1.0, 1.0, 1.0, 1.0}, x(4);
  const auto rep = pcg(ap, pinv, b, x);
  EXPECT_EQ(rep.iterations, 1);
  EXPECT_NEAR(x[3], 1.0 / 16.0, 1e-15);
}

TEST(Pcg, ConditionEstimateMatchesLaplacianSpectrum) {
  const int n = 30;
  const auto l = laplacian_1d(n);
  const LinearOperator ap = [&](std::span<const double> x, std::span<double> y) { l.multiply(x, y); };
  const LinearOperator none = [](std::span<const double> x, std::span<double> y) {
    std::copy(x.begin(), x.end(), y.begin());
  };
  std::vector<double> b(n), x(n);
  std::mt19937 rng(1);
  for (auto& v : b) v = std::uniform_real_distribution<double>(-1, 1)(rng);
  PcgOptions o;
  o.estimate_condition = true;
  o.record_history = true;
  const auto rep = pcg(ap, none, b, x, o);
  ASSERT_TRUE(rep.converged);
  const double pi = std::acos(-1.0);
  // Eigenvalues 2 - 2 cos(k pi / (n+1)).
  EXPECT_NEAR(rep.lambda_max, 2.0 - 2.0 * std::cos(n * pi / (n + 1)), 1e-8);
  EXPECT_NEAR(rep.lambda_min, 2.0 - 2.0 * std::cos(pi / (n + 1)), 1e-8);
  const auto ref = dense_solve(l.to_dense(), b);
  for (int i = 0; i < n; ++i) EXPECT_NEAR(x[i], ref[i], 1e-9);
  EXPECT_EQ(static_cast<int>(rep.history.size()), rep.iterations);
}

TEST(Pcg, ErrorEnergyNormIsMonotone) {
  const int n = 40;
  const auto l = laplacian_1d(n);
  std::vector<double> b(n);
  std::mt19937 rng(2);
  for (auto& v : b) v = std::uniform_real_distribution<double>(-1, 1)(rng);
  const auto ref = dense_solve(l.to_dense(), b);
  const LinearOperator ap = [&](std::span<const double> x, std::span<double> y) { l.multiply(x, y); };
  const LinearOperator none = [](std::span<const double> x, std::span<double> y) {
    std::copy(x.begin(), x.end(), y.begin());
  };
  double prev = INFINITY;
  for (int it = 1; it <= 25; ++it) {
    PcgOptions o;
    o.max_iter = it;
    std::vector<double> x(n);
    pcg(ap, none, b, x, o);
    std::vector<double> e(n), ae(n);
    for (int i = 0; i < n; ++i) e[i] = x[i] - ref[i];
    l.multiply(e, ae);
    const double en = std::sqrt(dot(e, ae));
    EXPECT_LE(en, prev * (1 + 1e-12));
    prev = en;
  }
}

TEST(EigenSmall, KnownSpectra) {
  // Rotation by 90 degrees scaled by 2: eigenvalues +-2i.
  const std::vector<double> r{0.0, -2.0, 2.0, 0.0};
  const auto e = eigenvalues(r, 2);
  ASSERT_EQ(e.size(), 2u);
  EXPECT_NEAR(e[0].imag(), 2.0, 1e-14);
  EXPECT_EQ(e[0], std::conj(e[1]));
  const Mat3 t{1.0, 5.0, 7.0, 0.0, 1.0, 3.0, 0.0, 0.0, -0.5};
  const auto e3 = eigenvalues3(t);
  double prod = 1.0;
  for (const auto& l : e3) prod *= l.real();
  EXPECT_NEAR(prod, -0.5, 1e-14);
  EXPECT_NEAR(spectral_radius(e3), 1.0, 1e-14);
}

TEST(PowerIteration, GeneralizedMaxOfDiagonalPair) {
  const std::vector<double> kd{1.0, 5.0, 3.0, 20.0, 7.0};
  const std::vector<double> md{1.0, 2.0, 1.0, 4.0, 1.0};
  const LinearOperator ka = [&](std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = kd[i] * x[i];
  };
  const LinearOperator ma = [&](std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = md[i] * x[i];
  };
  const LinearOperator ms = [&](std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] / md[i];
  };
  const auto r = power_iteration_genmax(ka, ma, ms, 5, {1e-12, 5000, 1});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.lambda, 7.0, 1e-6);
}
