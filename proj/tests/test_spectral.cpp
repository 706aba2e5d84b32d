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
#include "genalpha/integrator/integrator.hpp"
#include "genalpha/spectral.hpp"

using namespace genalpha;
using namespace genalpha::integrator;

namespace {

// Columns of G from single steps of the scalar problem u'' + lambda u = 0,
// tau = 0.1 and the state scaled by tau^m.
std::vector<double> stepped_G(const GenAlphaParams& p, double theta) {
  const double tau = 0.1;
  const int n = 3 * p.k;
  const double one = 1.0, lam = theta / (tau * tau);
  const auto sys = assembly::make_system(linalg::CsrMatrix::diagonal(std::span(&one, 1)),
                                         linalg::CsrMatrix::diagonal(std::span(&lam, 1)));
  PcgMassSolver solver(sys.M);
  ZeroSource src(1);
  GenAlphaIntegrator it(sys, p, solver, src);
  std::vector<double> g(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    IntegratorState s;
    s.blocks.assign(n, std::vector<double>(1, 0.0));
    s.blocks[j][0] = std::pow(tau, -j);
    it.step(s, tau);
    for (int i = 0; i < n; ++i) g[i * n + j] = s.blocks[i][0] * std::pow(tau, i);
  }
  return g;
}

// max |x_n| after `steps` steps from a generic start. The coupling between
// blocks allows transient growth, so only the end state is compared.
double growth(const GenAlphaParams& p, double theta, int steps) {
  const int n = 3 * p.k;
  const auto g = stepped_G(p, theta);
  std::vector<double> x(n, 1.0), y(n);
  for (int s = 0; s < steps; ++s) {
    for (int i = 0; i < n; ++i) {
      y[i] = 0.0;
      for (int j = 0; j < n; ++j) y[i] += g[i * n + j] * x[j];
    }
    x.swap(y);
  }
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  return peak;
}

std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b, int n, int rhs) {
  // A X = B, B is n x rhs row-major.
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    for (int j = 0; j < n; ++j) std::swap(a[c * n + j], a[piv * n + j]);
    for (int j = 0; j < rhs; ++j) std::swap(b[c * rhs + j], b[piv * rhs + j]);
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r * n + c] / a[c * n + c];
      for (int j = 0; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
      for (int j = 0; j < rhs; ++j) b[r * rhs + j] -= f * b[c * rhs + j];
    }
  }
  for (int r = 0; r < n; ++r)
    for (int j = 0; j < rhs; ++j) b[r * rhs + j] /= a[r * n + r];
  return b;
}

}  // namespace

TEST(Params, IdentitiesHoldExactly) {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 1 + trial % 3;
    std::vector<double> b(k), s(k);
    for (int j = 0; j < k; ++j) {
      b[j] = 0.999 * u(rng);
      s[j] = b[j] * u(rng);
    }
    for (auto f : {BlockFormulas::derived, BlockFormulas::published}) {
      const auto p = compute_params(k, b, s, f);
      for (const auto& blk : p.blocks) {
        EXPECT_EQ(blk.gamma - blk.alpha + blk.alpha_f, 0.5);
        EXPECT_GE(blk.alpha, 0.5);
      }
    }
  }
}

TEST(Params, InvalidInputThrows) {
  EXPECT_THROW(compute_params(0, 0.5), ParameterError);
  EXPECT_THROW(compute_params(1, 1.0), ParameterError);
  EXPECT_THROW(compute_params(1, -0.1), ParameterError);
  const std::vector<double> b{0.3}, s{0.5};
  EXPECT_THROW(compute_params(1, b, s), ParameterError);
  EXPECT_THROW(compute_params(2, b, b), ParameterError);
}

TEST(Amplification, MatchesSteppedScalarProblem) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> th(0.0, 6.0), rh(0.0, 0.95);
  for (int trial = 0; trial < 60; ++trial) {
    const int k = 1 + trial % 3;
    const double theta = th(rng);
    const auto p = compute_params(k, rh(rng));
    const auto g = spectral::build_G(p, theta).matrix();
    const auto ref = stepped_G(p, theta);
    double scale = 1.0;
    for (double v : ref) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(g[i], ref[i], 1e-10 * scale) << "k=" << k;
  }
}

TEST(Amplification, SecondOrderPairMatchesInverseForm) {
  for (double theta : {0.0, 0.7, 2.5}) {
    for (double rho : {0.0, 0.5, 0.9}) {
      const auto p = compute_params(2, rho);
      const auto x = solve_dense(spectral::k2_matrix_a(p, theta), spectral::k2_matrix_b(p, theta), 6, 6);
      const auto g = spectral::build_G(p, theta).matrix();
      for (int i = 0; i < 36; ++i) EXPECT_NEAR(g[i], x[i], 1e-13);
    }
  }
}

TEST(Amplification, BlockPolynomialsMatchClosedForms) {
  for (double rho : {0.0, 0.4, 0.8}) {
    const auto p = compute_params(3, rho);
    for (double theta : {0.3, 1.9, 3.1}) {
      const auto g = spectral::build_G(p, theta);
      for (int j = 0; j < 3; ++j) {
        const auto mono = spectral::characteristic_polynomial(g.block(j));
        const auto cf = spectral::characteristic_polynomial(p.block(j), j == 2, theta);
        for (int c = 0; c < 4; ++c) EXPECT_NEAR(cf[c] / cf[3], mono[c], 1e-12);
      }
    }
  }
}

TEST(Spectrum, PrincipalRootsAreOneAtZero) {
  for (int k : {1, 2, 3}) {
    const auto s = spectral::spectrum(compute_params(k, 0.6), 0.0);
    int ones = 0;
    for (const auto& l : s.eigenvalues) ones += std::abs(l - 1.0) < 1e-6;
    EXPECT_EQ(ones, 2 * k);
    EXPECT_NEAR(s.rho, 1.0, 1e-6);
  }
}

TEST(Stability, LimitSeparatesBoundedFromGrowing) {
  for (int k : {1, 2}) {
    for (double rho : {0.0, 0.5, 0.9}) {
      const auto p = compute_params(k, rho);
      const double tm = spectral::find_stability(p).theta_max;
      EXPECT_LT(growth(p, 0.995 * tm, 3000), 1.0) << k << " " << rho;
      EXPECT_GT(growth(p, 1.01 * tm, 3000), 1e3) << k << " " << rho;
    }
  }
}

TEST(Stability, LimitIndependentOfOrder) {
  for (double rho : {0.0, 0.5, 0.9}) {
    const double t1 = spectral::find_stability(compute_params(1, rho)).theta_max;
    for (int k : {2, 3}) EXPECT_NEAR(spectral::find_stability(compute_params(k, rho)).theta_max, t1, 1e-6);
  }
  EXPECT_NEAR(spectral::find_stability(compute_params(1, 0.99)).theta_max, 4.0, 0.04);
  // Undamped limit of the last block: the classical 12/5.
  EXPECT_NEAR(spectral::find_stability(compute_params(1, 0.0)).theta_max, 2.4, 1e-8);
}

TEST(Bifurcation, NumericLimitMatchesClosedForm) {
  for (double rho : {0.0, 0.3, 0.7}) {
    const auto p = compute_params(2, rho);
    for (int j = 0; j < 2; ++j) {
      const auto b = spectral::find_bifurcation(p, j);
      ASSERT_TRUE(b.found);
      EXPECT_NEAR(b.theta, p.block(j).omega_b, 1e-6 * p.block(j).omega_b);
      EXPECT_NEAR(b.root_magnitude, rho, 1e-3);
    }
  }
}

TEST(Bifurcation, PublishedFirstBlockLimitDecreasesWithRho) {
  double prev = INFINITY;
  for (double rho : {0.0, 0.2, 0.4, 0.6, 0.8}) {
    const auto p = compute_params(2, rho, BlockFormulas::published);
    const auto b = spectral::find_bifurcation(p, 0);
    ASSERT_TRUE(b.found) << rho;
    EXPECT_NEAR(b.theta, p.block(0).omega_b, 1e-6);
    EXPECT_LT(b.theta, prev);
    prev = b.theta;
  }
}

TEST(Spectrum, RadiusBoundedUpToTheLimit) {
  for (int k : {1, 2}) {
    for (double rho : {0.0, 0.5, 0.9}) {
      const auto p = compute_params(k, rho);
      const double tm = spectral::find_stability(p).theta_max;
      for (int i = 0; i <= 200; ++i) {
        const auto s = spectral::spectrum(p, tm * i / 200.0);
        EXPECT_LE(s.rho, 1.0 + 1e-10);
        EXPECT_LT(s.max_residual, 1e-10);
      }
      EXPECT_GT(spectral::spectrum(p, tm * 1.001).rho, 1.0);
    }
  }
}
