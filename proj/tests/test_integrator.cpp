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

#include "genalpha/error.hpp"
#include "genalpha/integrator/integrator.hpp"

using namespace genalpha;
using namespace genalpha::integrator;

namespace {

struct Scalar {
  double one = 1.0, lam;
  assembly::SemiDiscreteSystem sys;
  Scalar(double w, assembly::Damping d = {})
      : lam(w * w),
        sys(assembly::make_system(linalg::CsrMatrix::diagonal(std::span(&one, 1)),
                                  linalg::CsrMatrix::diagonal(std::span(&lam, 1)), d)) {}
};

// Observed order of u(1) for u'' + c u' + w^2 u = f.
double observed_order(int k, double c, bool forced, int n0 = 160, double T = 8.0) {
  const double w = 3.0;
  Scalar s(w, {c, 0.0});
  // Forced case: exact u = sin(2t) + t^2, f = u'' + c u' + w^2 u.
  FunctionSource fsrc(1, 3 * k, [&](int a, double t, std::span<double> out) {
    auto der = [&](int n) {
      const double poly = n == 0 ? t * t : (n == 1 ? 2 * t : (n == 2 ? 2.0 : 0.0));
      return std::pow(2.0, n) * std::sin(2 * t + n * M_PI / 2) + poly;
    };
    out[0] = der(a + 2) + c * der(a + 1) + w * w * der(a);
  });
  ZeroSource zero(1);
  const Source& src = forced ? static_cast<const Source&>(fsrc) : zero;
  PcgMassSolver solver(s.sys.M);
  GenAlphaIntegrator it(s.sys, compute_params(k, 0.5), solver, src);
  const double z = c / 2, wd = std::sqrt(w * w - z * z);
  auto exact = [&](double t) {
    return forced ? std::sin(2.0 * t) + t * t : std::exp(-z * t) * (std::cos(wd * t) + z / wd * std::sin(wd * t));
  };
  // Maximum nodal error, which is not fooled by sign changes of the error.
  std::vector<double> errs;
  for (int n : {n0, 2 * n0}) {
    std::vector<double> u{forced ? 0.0 : 1.0}, v{forced ? 2.0 : 0.0};
    auto st = it.init_state(u, v);
    double e = 0.0;
    for (int i = 0; i < n; ++i) {
      it.step(st, T / n);
      e = std::max(e, std::abs(st.u()[0] - exact(st.t)));
    }
    errs.push_back(e);
  }
  return std::log2(errs[0] / errs[1]);
}

}  // namespace

TEST(Integrator, OrderTwoK) {
  for (int k : {1, 2, 3}) {
    for (double c : {0.0, 0.4}) {
      for (bool forced : {false, true}) {
        EXPECT_NEAR(observed_order(k, c, forced), 2.0 * k, 0.25) << "k=" << k << " c=" << c << " f=" << forced;
      }
    }
  }
}

TEST(Integrator, KMassSolvesPerStep) {
  for (int k : {1, 2, 3}) {
    Scalar s(2.0);
    PcgMassSolver solver(s.sys.M);
    ZeroSource src(1);
    GenAlphaIntegrator it(s.sys, compute_params(k, 0.3), solver, src);
    std::vector<double> u{1.0}, v{0.0};
    auto st = it.init_state(u, v);
    solver.reset_counters();
    for (int i = 0; i < 7; ++i) it.step(st, 0.01);
    EXPECT_EQ(solver.solves(), 7 * k);
    EXPECT_EQ(static_cast<int>(st.blocks.size()), 3 * k);
    EXPECT_NEAR(st.t, 0.07, 1e-15);
  }
}

TEST(Integrator, InitialBlocksFollowTheEquation) {
  // A0 = f - c V0 - K U0, then L(A0) = -c A0 - K V0 for f = 0.
  Scalar s(2.0, {0.5, 0.0});
  PcgMassSolver solver(s.sys.M);
  ZeroSource src(1);
  GenAlphaIntegrator it(s.sys, compute_params(2, 0.3), solver, src);
  std::vector<double> u{1.0}, v{-0.5};
  const auto st = it.init_state(u, v);
  EXPECT_NEAR(st.blocks[2][0], -0.5 * -0.5 - 4.0, 1e-12);
  EXPECT_NEAR(st.blocks[3][0], -0.5 * st.blocks[2][0] - 4.0 * -0.5, 1e-12);
}

TEST(Integrator, CflCheckAndInstabilityDetector) {
  Scalar s(10.0);
  PcgMassSolver solver(s.sys.M);
  ZeroSource src(1);
  const auto p = compute_params(1, 0.5);
  GenAlphaIntegrator it(s.sys, p, solver, src);
  const double tm = stability_limit(p);
  const double lmax = estimate_lambda_max(s.sys, solver);
  EXPECT_NEAR(lmax, 100.0, 1e-4);
  const double tcfl = cfl_timestep(lmax, tm);
  EXPECT_NEAR(tcfl, std::sqrt(tm) / 10.0, 1e-6);
  std::vector<double> u{1.0}, v{0.0};
  auto st = it.init_state(u, v);
  IntegrateOptions o;
  o.tau = 1.5 * tcfl;
  o.t_end = 200 * o.tau;
  o.cfl_tau = tcfl;
  EXPECT_THROW(integrate(it, st, o), StabilityError);
  o.unsafe = true;
  EXPECT_THROW(integrate(it, st, o), StabilityError);  // detector
  st = it.init_state(u, v);
  o.tau = 0.9 * tcfl;
  o.t_end = 200 * o.tau;
  o.unsafe = false;
  int calls = 0;
  o.observe_every = 50;
  const auto rep = integrate(it, st, o, [&](const IntegratorState&) { ++calls; });
  EXPECT_EQ(rep.steps, 200);
  EXPECT_EQ(calls, 5);
  EXPECT_THROW(cfl_timestep(0.0, tm), DomainError);
  EXPECT_THROW(cfl_timestep(1.0, tm, 1.5), DomainError);
}

TEST(Integrator, FiniteDifferenceSourceDerivatives) {
  FiniteDifferenceSource fd(1, 1e-2, [](double t, std::span<double> out) { out[0] = std::exp(0.5 * t); });
  std::vector<double> out(1);
  for (int a = 0; a <= 4; ++a) {
    fd.derivative(a, 0.3, out);
    EXPECT_NEAR(out[0], std::pow(0.5, a) * std::exp(0.15), 1e-4) << a;
  }
  FunctionSource f(1, 2, [](int, double, std::span<double> o) { o[0] = 0.0; });
  EXPECT_THROW(f.derivative(3, 0.0, out), UsageError);
}
