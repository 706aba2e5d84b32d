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
#include <numeric>
#include <random>

#include "genalpha/error.hpp"
#include "genalpha/splines.hpp"

using namespace genalpha;
using splines::KnotVector;
using splines::SplineSpace;

namespace {

// Textbook recursive definition with the 0/0 = 0 convention; last span closed.
double cox_de_boor(const std::vector<double>& t, int i, int p, double x) {
  if (p == 0) {
    const bool last = x == t.back() && t[i] < t[i + 1] && t[i + 1] == t.back();
    return (t[i] <= x && x < t[i + 1]) || last ? 1.0 : 0.0;
  }
  double v = 0.0;
  if (t[i + p] > t[i]) v += (x - t[i]) / (t[i + p] - t[i]) * cox_de_boor(t, i, p - 1, x);
  if (t[i + p + 1] > t[i + 1]) v += (t[i + p + 1] - x) / (t[i + p + 1] - t[i + 1]) * cox_de_boor(t, i + 1, p - 1, x);
  return v;
}

std::vector<double> to_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST(KnotVector, Validation) {
  EXPECT_THROW(KnotVector(1, {0.0, 0.5, 1.0, 1.0}), DomainError);        // not open at 0
  EXPECT_THROW(KnotVector(1, {0.0, 0.0, 0.7, 0.5, 1.0, 1.0}), DomainError);  // unsorted
  EXPECT_THROW(KnotVector(1, {0.0, 0.0, 0.5, 0.5, 1.0, 1.0}), DomainError);  // multiplicity > p
  EXPECT_NO_THROW(KnotVector(2, {0.0, 0.0, 0.0, 0.5, 0.5, 1.0, 1.0, 1.0}));
}

TEST(KnotVector, Uniform) {
  const auto kv = KnotVector::uniform(3, 4);
  EXPECT_EQ(kv.size(), 7);
  EXPECT_EQ(kv.num_elements(), 4);
  EXPECT_DOUBLE_EQ(kv.mesh_size(), 0.25);
  EXPECT_DOUBLE_EQ(kv.quasi_uniformity(), 1.0);
}

TEST(KnotVector, FindSpan) {
  const KnotVector kv(1, {0.0, 0.0, 0.5, 1.0, 1.0});
  EXPECT_EQ(kv.find_span(0.25), 1);
  EXPECT_EQ(kv.find_span(1.0), 2);
  EXPECT_THROW(kv.find_span(1.5), DomainError);

  const KnotVector nu(2, {0.0, 0.0, 0.0, 0.1, 0.15, 0.6, 0.6, 1.0, 1.0, 1.0});
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (int s = 0; s < 500; ++s) {
    const double x = d(rng);
    int scan = -1;
    for (int i = 0; i + 1 < static_cast<int>(nu.knots().size()); ++i) {
      if (nu[i] <= x && x < nu[i + 1]) scan = i;
    }
    EXPECT_EQ(nu.find_span(x), scan);
  }
}

TEST(Basis, PiecewiseConstant) {
  const KnotVector kv(0, {0.0, 0.5, 1.0});
  const auto b = splines::eval_basis(kv, 0.25);
  EXPECT_EQ(b.first, 0);
  ASSERT_EQ(b.values.size(), 1u);
  EXPECT_EQ(b.values[0], 1.0);
}

TEST(Basis, MatchesRecursiveDefinition) {
  std::vector<KnotVector> kvs{KnotVector::uniform(2, 2), KnotVector::uniform(4, 5),
                              KnotVector(3, {0, 0, 0, 0, 0.2, 0.2, 0.7, 1, 1, 1, 1})};
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (const auto& kv : kvs) {
    const auto t = to_vec(kv.knots());
    for (int s = 0; s < 200; ++s) {
      const double x = s == 0 ? 0.5 : (s == 1 ? 1.0 : d(rng));
      const auto b = splines::eval_basis(kv, x);
      for (int i = 0; i < kv.size(); ++i) {
        const int j = i - b.first;
        const double v = (j >= 0 && j <= kv.degree()) ? b.values[j] : 0.0;
        EXPECT_NEAR(v, cox_de_boor(t, i, kv.degree(), x), 1e-14) << "i=" << i << " x=" << x;
      }
    }
  }
}

TEST(Basis, PartitionOfUnityAndNonnegativity) {
  for (int p = 0; p <= 6; ++p) {
    const auto kv = KnotVector::uniform(p, 7);
    for (int s = 0; s <= 1000; ++s) {
      const auto b = splines::eval_basis(kv, s / 1000.0);
      EXPECT_NEAR(std::accumulate(b.values.begin(), b.values.end(), 0.0), 1.0, 1e-14);
      for (double v : b.values) EXPECT_GE(v, 0.0);
    }
  }
}

TEST(Basis, DerivativesMatchFiniteDifferences) {
  const KnotVector kv(3, {0, 0, 0, 0, 0.3, 0.5, 0.8, 1, 1, 1, 1});
  const double h = 1e-6;
  for (double x : {0.1, 0.37, 0.61, 0.93}) {
    const auto d = splines::eval_basis_derivatives(kv, x, 2);
    const auto bp = splines::eval_basis(kv, x + h);
    const auto bm = splines::eval_basis(kv, x - h);
    ASSERT_EQ(bp.first, d.first);
    ASSERT_EQ(bm.first, d.first);
    double sum = 0.0;
    for (int j = 0; j <= 3; ++j) {
      const double fd = (bp.values[j] - bm.values[j]) / (2 * h);
      EXPECT_NEAR(d.ders[1][j], fd, 1e-6 * std::max(1.0, std::abs(fd)));
      sum += d.ders[1][j];
    }
    EXPECT_NEAR(sum, 0.0, 1e-12);
  }
}

TEST(Basis, HatSlopes) {
  const auto kv = KnotVector::uniform(1, 4);
  const auto d = splines::eval_basis_derivatives(kv, 0.3, 3);
  EXPECT_DOUBLE_EQ(d.ders[1][0], -4.0);
  EXPECT_DOUBLE_EQ(d.ders[1][1], 4.0);
  EXPECT_EQ(d.ders[2][0], 0.0);
  EXPECT_EQ(d.ders[3][1], 0.0);
}

TEST(SplineSpace, IndexRoundTrip) {
  const SplineSpace s({KnotVector::uniform(2, 3), KnotVector::uniform(1, 2), KnotVector::uniform(3, 1)});
  EXPECT_EQ(s.size(), 5u * 3u * 4u);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s.flat_index(s.multi_index(i)), i);
  EXPECT_EQ(s.flat_index({1, 0, 0}), 1u);
  EXPECT_EQ(s.flat_index({0, 1, 0}), 5u);
}

TEST(SplineSpace, TensorProductStructure) {
  const auto s = SplineSpace::uniform(2, 2, 4);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (int n = 0; n < 1000; ++n) {
    const std::array<double, 2> pt{d(rng), d(rng)};
    const auto tv = splines::tensor_eval(s, pt);
    const auto bx = splines::eval_basis(s.direction(0), pt[0]);
    const auto by = splines::eval_basis(s.direction(1), pt[1]);
    double sum = 0.0;
    for (int b = 0; b < tv.count[1]; ++b) {
      for (int a = 0; a < tv.count[0]; ++a) {
        const double v = tv.values[a + tv.count[0] * b];
        EXPECT_NEAR(v, bx.values[a] * by.values[b], 1e-15);
        sum += v;
      }
    }
    EXPECT_NEAR(sum, 1.0, 1e-14);
  }
  const std::array<double, 1> bad{0.5};
  EXPECT_THROW(splines::tensor_eval(s, bad), UsageError);
}

TEST(SplineSpace, SingleConstant) {
  const SplineSpace s({KnotVector(0, {0.0, 1.0}), KnotVector(0, {0.0, 1.0})});
  const std::array<double, 2> pt{0.3, 0.9};
  const auto tv = splines::tensor_eval(s, pt);
  ASSERT_EQ(tv.values.size(), 1u);
  EXPECT_EQ(tv.values[0], 1.0);
}
