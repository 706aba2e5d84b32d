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

#include <benchmark/benchmark.h>

#include <random>

#include "genalpha/assembly.hpp"
#include "genalpha/dirichlet.hpp"
#include "genalpha/integrator/integrator.hpp"
#include "genalpha/precond.hpp"
#include "genalpha/problem.hpp"

using namespace genalpha;

namespace {

std::vector<double> random_vector(std::size_t n) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

// 2D parametric mass solve; args: degree, n_sub.
void BM_KroneckerSolve(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
  const auto m = precond::univariate_mass(splines::KnotVector::uniform(p, n));
  const linalg::KroneckerOperator k({m, m});
  auto x = random_vector(k.size());
  for (auto _ : state) {
    k.solve_in_place(x);
    benchmark::DoNotOptimize(x.data());
  }
  state.counters["dof"] = static_cast<double>(k.size());
  state.counters["flops"] = static_cast<double>(k.solve_flops());
}
BENCHMARK(BM_KroneckerSolve)->ArgsProduct({{2, 4}, {32, 64, 128}});

struct Fixture {
  geometry::MultiPatchSpace mp;
  assembly::GlobalMatrices g;
  assembly::SemiDiscreteSystem s;
  std::shared_ptr<precond::SchwarzPrecond> pc;
  Fixture(const std::string& name, int p, int n)
      : mp(geometry::build_multipatch(geometry::builtin_geometry(name), p, n)),
        g(assembly::assemble_multipatch(mp, 1.0, 1)),
        s(assembly::apply_dirichlet(g, mp.boundary_dofs(), 1.0)),
        pc(precond::build_schwarz(mp, g.patch_mass, s)) {}
};

// Additive Schwarz application on the 4-patch ring; args: degree, n_sub.
void BM_SchwarzApply(benchmark::State& state) {
  const Fixture f("ring-4", static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto v = random_vector(f.s.size());
  std::vector<double> w(v.size());
  for (auto _ : state) {
    f.pc->apply_inverse(v, w);
    benchmark::DoNotOptimize(w.data());
  }
  state.counters["dof"] = static_cast<double>(v.size());
}
BENCHMARK(BM_SchwarzApply)->ArgsProduct({{2, 4}, {16, 32}});

// One time step of order 2k on the quarter annulus; args: k, n_sub.
void BM_IntegratorStep(benchmark::State& state) {
  problem::ProblemSpec spec;
  spec.geometry = geometry::quarter_annulus();
  spec.degree = 3;
  spec.n_sub = static_cast<int>(state.range(1));
  spec.solution = manufactured::smooth_sine(2);
  problem::WaveProblem wp(std::move(spec));
  auto [u0, v0] = wp.initial_data();
  integrator::GenAlphaIntegrator it(wp.system(), integrator::compute_params(static_cast<int>(state.range(0)), 0.5),
                                    wp.solver(), wp.source());
  auto st = it.init_state(u0, v0);
  for (auto _ : state) it.step(st, 1e-6);
  state.counters["dof"] = static_cast<double>(u0.size());
}
BENCHMARK(BM_IntegratorStep)->ArgsProduct({{1, 2}, {16, 32}})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
