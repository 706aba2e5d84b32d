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
#include "genalpha/manufactured.hpp"
#include "genalpha/problem.hpp"
#include "genalpha/study.hpp"

using namespace genalpha;

TEST(Manufactured, TemporalDerivativesMatchFiniteDifferences) {
  const manufactured::Temporal t{0.3, -1.2, 2.5, 0.7, -0.4};
  const double h = 1e-4;
  for (int n = 0; n < 5; ++n) {
    const double fd = (t.derivative(n, 0.6 + h) - t.derivative(n, 0.6 - h)) / (2 * h);
    EXPECT_NEAR(t.derivative(n + 1, 0.6), fd, 1e-5 * std::max(1.0, std::abs(fd)));
  }
}

TEST(Manufactured, ForcingSatisfiesTheEquation) {
  // f = u_tt + a0 u_t + a1 L u_t + L u with L = -omega^2 Laplacian, the
  // Laplacian by a five-point difference.
  const double a0 = 0.3, a1 = 0.02, omega = 0.8, h = 2e-4;
  for (const auto& name : {"smooth-sine", "linear", "standing-wave"}) {
    const auto s = manufactured::by_name(name, 2, omega);
    const geometry::Point x{0.31, 0.57, 0.0};
    const double t = 0.013;
    auto lap = [&](int n) {
      double sum = -4.0 * s.value(x, t, n);
      for (int d = 0; d < 2; ++d) {
        auto p = x, m = x;
        p[d] += h;
        m[d] -= h;
        sum += s.value(p, t, n) + s.value(m, t, n);
      }
      return sum / (h * h);
    };
    const double ref = s.value(x, t, 2) + a0 * s.value(x, t, 1) - a1 * omega * omega * lap(1) -
                       omega * omega * lap(0);
    const double scale = std::abs(s.value(x, t, 2)) + 1.0;
    EXPECT_NEAR(s.forcing(x, t, a0, a1), ref, 1e-4 * scale) << name;
  }
  const auto w = manufactured::standing_wave(2);
  EXPECT_NEAR(w.forcing({0.2, 0.3, 0.0}, 0.4), 0.0, 1e-9);
  EXPECT_THROW(manufactured::by_name("nope", 2), ConfigError);
}

TEST(Problem, LinearSolutionIsReproducedAtDegreeOne) {
  problem::ProblemSpec spec;
  spec.geometry = geometry::unit_box(2);
  spec.degree = 1;
  spec.n_sub = 4;
  spec.solution = manufactured::linear(2);
  problem::WaveProblem wp(std::move(spec));
  auto [u0, v0] = wp.initial_data();
  integrator::GenAlphaIntegrator it(wp.system(), integrator::compute_params(1, 0.5), wp.solver(), wp.source());
  auto st = it.init_state(u0, v0);
  for (int i = 0; i < 10; ++i) it.step(st, 0.01);
  const auto e = wp.errors(st);
  EXPECT_LT(e.rel_u(), 1e-12);
  EXPECT_LT(e.rel_v(), 1e-12);
}

TEST(Problem, IntegratorConvergesToSemiDiscreteReference) {
  problem::ProblemSpec spec;
  spec.geometry = geometry::unit_box(1);
  spec.degree = 3;
  spec.n_sub = 8;
  spec.solution = manufactured::smooth_sine(1);
  problem::WaveProblem wp(std::move(spec));
  auto [u0, v0] = wp.initial_data();
  const problem::SemiDiscreteReference ref(wp, u0, v0);
  std::vector<double> ur, vr;
  std::vector<double> err;
  for (int n : {40, 80}) {
    integrator::GenAlphaIntegrator it(wp.system(), integrator::compute_params(2, 0.5), wp.solver(), wp.source());
    auto st = it.init_state(u0, v0);
    for (int i = 0; i < n; ++i) it.step(st, 0.05 / n);
    ref.evaluate(st.t, ur, vr);
    for (std::size_t i = 0; i < ur.size(); ++i) ur[i] -= st.u()[i];
    err.push_back(wp.mass_norm(ur));
  }
  EXPECT_NEAR(std::log2(err[0] / err[1]), 4.0, 0.3);
}

TEST(Config, StrictParsing) {
  const auto c = study::parse_config(R"({"p": [1, 2], "n_sub": 8, "T": 0.5, "rho": 0.3})", "space-convergence");
  EXPECT_EQ(c.degrees, (std::vector<int>{1, 2}));
  EXPECT_EQ(c.n_sub, std::vector<int>{8});
  EXPECT_EQ(*c.t_end, 0.5);
  for (const char* bad : {R"({"bogus": 1})", R"({"tau": -1})", R"({"rho": 1.0})", R"({"p": "two"})",
                          R"([1, 2])", R"({"k": 0})", R"({"n_sub": []})", "{"}) {
    EXPECT_THROW(study::parse_config(bad, "run"), ConfigError) << bad;
  }
  EXPECT_THROW(study::parse_config(R"({"study": "spectrum"})", "run"), ConfigError);
  study::StudyConfig u;
  u.study = "no-such-study";
  EXPECT_THROW(study::run_study(u), ConfigError);
  u.study = "run";
  u.geometry = "no-such-geometry";
  EXPECT_THROW(study::run_study(u), ConfigError);
}

TEST(Csv, FormattingAndShape) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17}) EXPECT_EQ(std::stod(study::fmt(v)), v);
  study::CsvTable t({"a", "b"});
  t.add_row({"1", "2"});
  EXPECT_THROW(t.add_row({"1"}), UsageError);
  EXPECT_EQ(t.to_string(), "a,b\n1,2\n");
}

TEST(Slope, LogLogFit) {
  const std::vector<double> x{1, 2, 4, 8, 16};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, 2.5));
  EXPECT_NEAR(study::loglog_slope(x, y), 2.5, 1e-12);
  y[4] = 0.0;  // skipped
  EXPECT_NEAR(study::loglog_slope(x, y), 2.5, 1e-12);
}

TEST(Studies, SpectrumSummary) {
  auto c = study::parse_config(R"({"k": [1, 2], "rho": [0.0, 0.5], "theta_samples": 7})", "spectrum");
  const auto r = study::run_study(c);
  EXPECT_EQ(r.table.rows().size(), 2u * 2u * 7u);
  ASSERT_TRUE(r.summary);
  bool saw = false;
  for (const auto& row : r.summary->rows()) {
    if (row[0] == "1" && std::stod(row[1]) == 0.0) {
      EXPECT_NEAR(std::stod(row[3]), 2.4, 1e-8);
      saw = true;
    }
  }
  EXPECT_TRUE(saw);
}

TEST(Studies, TrajectoryOfLinearSolution) {
  auto c = study::parse_config(
      R"({"geometry": "two-patch-square", "p": 1, "n_sub": 2, "solution": "linear", "tau": 0.01, "steps": 5})",
      "run");
  const auto r = study::run_study(c);
  EXPECT_EQ(r.aborted, 0);
  ASSERT_EQ(r.table.columns(), (std::vector<std::string>{"t", "L2_error_u", "L2_error_v", "energy"}));
  ASSERT_EQ(r.table.rows().size(), 6u);
  for (const auto& row : r.table.rows()) EXPECT_LT(std::stod(row[1]), 1e-12);
}
