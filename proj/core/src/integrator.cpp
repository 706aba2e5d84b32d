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

#include "genalpha/integrator/integrator.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include "genalpha/error.hpp"
#include "genalpha/linalg/power_iteration.hpp"
#include "genalpha/linalg/sparse.hpp"
#include "genalpha/spectral.hpp"

namespace genalpha::integrator {

using linalg::axpy;
using linalg::norm2;

void ZeroSource::derivative(int, double, std::span<double> out) const { std::fill(out.begin(), out.end(), 0.0); }

void FunctionSource::derivative(int a, double t, std::span<double> out) const {
  if (a > max_order_) {
    throw UsageError("source: derivative of order " + std::to_string(a) + " requested, only " +
                     std::to_string(max_order_) + " available");
  }
  fn_(a, t, out);
}

FiniteDifferenceSource::FiniteDifferenceSource(std::size_t n, double h, Fn fn) : n_(n), h_(h), fn_(std::move(fn)) {
  if (!(h > 0.0)) throw DomainError("finite-difference source: step must be positive");
  std::clog << "genalpha: warning: load derivatives approximated by central differences (h = " << h << ")\n";
}

void FiniteDifferenceSource::derivative(int a, double t, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  std::vector<double> f(n_);
  // a-th central difference: sum_i (-1)^i C(a,i) F(t + (a/2 - i) h) / h^a.
  double binom = 1.0;
  for (int i = 0; i <= a; ++i) {
    fn_(t + (0.5 * a - i) * h_, f);
    const double c = (i % 2 ? -binom : binom) / std::pow(h_, a);
    axpy(c, f, out);
    binom = binom * (a - i) / (i + 1);
  }
}

PcgMassSolver::PcgMassSolver(const linalg::CsrMatrix& m, linalg::LinearOperator pinv, linalg::PcgOptions options)
    : m_(m), pinv_(std::move(pinv)), options_(options) {}

PcgMassSolver::PcgMassSolver(const linalg::CsrMatrix& m, linalg::PcgOptions options) : m_(m), options_(options) {
  auto diag = std::make_shared<std::vector<double>>(m.diagonal());
  for (double d : *diag) {
    if (!(d > 0.0)) throw AssemblyError("Jacobi preconditioner: nonpositive diagonal entry");
  }
  pinv_ = [diag](std::span<const double> in, std::span<double> out) {
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i] / (*diag)[i];
  };
}

linalg::PcgReport PcgMassSolver::solve(std::span<const double> b, std::span<double> x) {
  auto rep = linalg::pcg([this](std::span<const double> in, std::span<double> out) { m_.multiply(in, out); }, pinv_, b,
                         x, options_);
  ++solves_;
  iterations_ += rep.iterations;
  return rep;
}

double stability_limit(const GenAlphaParams& params) { return spectral::find_stability(params).theta_max; }

double cfl_timestep(double lambda_max, double theta_max, double safety) {
  if (!(lambda_max > 0.0)) throw DomainError("cfl_timestep: lambda_max must be positive");
  if (!(safety > 0.0 && safety <= 1.0)) throw DomainError("cfl_timestep: safety must lie in (0, 1]");
  return safety * std::sqrt(theta_max / lambda_max);
}

double estimate_lambda_max(const assembly::SemiDiscreteSystem& system, MassSolver& solver) {
  linalg::PowerOptions opt;
  opt.rel_tol = 1e-7;
  const auto res = linalg::power_iteration_genmax(
      [&](std::span<const double> in, std::span<double> out) { system.K.multiply(in, out); },
      [&](std::span<const double> in, std::span<double> out) { system.M.multiply(in, out); },
      [&](std::span<const double> in, std::span<double> out) { solver.solve(in, out); },
      static_cast<std::size_t>(system.size()), opt);
  return res.lambda;
}

GenAlphaIntegrator::GenAlphaIntegrator(const assembly::SemiDiscreteSystem& system, GenAlphaParams params,
                                       MassSolver& solver, const Source& source)
    : sys_(system), params_(std::move(params)), solver_(solver), source_(source) {
  const auto n = static_cast<std::size_t>(system.size());
  if (source.size() != n) throw UsageError("integrator: source size does not match the system");
  next_.assign(static_cast<std::size_t>(3 * params_.k), std::vector<double>(n));
  w1_.resize(n);
  w2_.resize(n);
  w3_.resize(n);
}

void GenAlphaIntegrator::solve(std::span<const double> b, std::span<double> x, int block) {
  const auto rep = solver_.solve(b, x);
  if (!rep.converged) {
    throw ConvergenceError("mass solve did not converge (relative residual " + std::to_string(rep.rel_residual) +
                               ", " + std::to_string(rep.iterations) + " iterations)",
                           block);
  }
}

IntegratorState GenAlphaIntegrator::init_state(std::span<const double> u0, std::span<const double> v0, double t0) {
  const auto n = static_cast<std::size_t>(sys_.size());
  if (u0.size() != n || v0.size() != n) throw UsageError("init_state: initial data size mismatch");
  IntegratorState s;
  s.t = t0;
  s.blocks.assign(static_cast<std::size_t>(3 * params_.k), std::vector<double>(n, 0.0));
  std::copy(u0.begin(), u0.end(), s.blocks[0].begin());
  std::copy(v0.begin(), v0.end(), s.blocks[1].begin());
  for (int m = 2; m < 3 * params_.k; ++m) {
    source_.derivative(m - 2, t0, w3_);
    sys_.K.multiply_add(-1.0, s.blocks[m - 2], w3_);
    if (sys_.damped()) sys_.C.multiply_add(-1.0, s.blocks[m - 1], w3_);
    solve(w3_, s.blocks[m], -1);
  }
  return s;
}

void GenAlphaIntegrator::step(IntegratorState& state, double tau) {
  if (!(tau > 0.0)) throw DomainError("step: tau must be positive");
  const int k = params_.k;
  const int top = 3 * k - 1;
  const auto& D = state.blocks;
  // sum_{m=from}^{to} (s tau)^{m-from}/(m-from)! D_m
  auto taylor = [&](int from, int to, double s, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    double c = 1.0;
    for (int m = from; m <= to; ++m) {
      if (m > from) c *= s * tau / (m - from);
      if (c != 0.0) axpy(c, D[m], out);
    }
  };
  for (int j = 0; j < k; ++j) {
    const BlockParams& b = params_.block(j);
    const int lo = 3 * j;
    const int hi = lo + 2;
    taylor(hi, top, 1.0, w1_);  // predictor of the unknown
    source_.derivative(lo, state.t + b.alpha_f * tau, w3_);
    taylor(lo, 3 * k - 3, b.alpha_f, w2_);
    sys_.K.multiply_add(-1.0, w2_, w3_);
    if (sys_.damped()) {
      taylor(lo + 1, top, b.alpha_f, w2_);
      sys_.C.multiply_add(-1.0, w2_, w3_);
    }
    // M x = (rhs - (1 - alpha) M pred) / alpha
    sys_.M.multiply_add(-(1.0 - b.alpha), w1_, w3_);
    for (double& v : w3_) v /= b.alpha;
    auto& x = next_[hi];
    solve(w3_, x, j + 1);
    // P = x - pred, reuse w1
    for (std::size_t i = 0; i < x.size(); ++i) w1_[i] = x[i] - w1_[i];
    taylor(lo, top, 1.0, next_[lo]);
    axpy(b.beta * tau * tau, w1_, next_[lo]);
    taylor(lo + 1, top, 1.0, next_[lo + 1]);
    axpy(b.gamma * tau, w1_, next_[lo + 1]);
  }
  state.blocks.swap(next_);
  state.t += tau;
}

IntegrateReport integrate(GenAlphaIntegrator& integrator, IntegratorState& state, const IntegrateOptions& opt,
                          const Observer& observer) {
  if (!(opt.tau > 0.0)) throw DomainError("integrate: tau must be positive");
  if (opt.cfl_tau > 0.0 && opt.tau > opt.cfl_tau && !opt.unsafe) {
    throw StabilityError("time step " + std::to_string(opt.tau) + " exceeds the CFL limit " +
                         std::to_string(opt.cfl_tau));
  }
  const int steps = static_cast<int>(std::llround(opt.t_end / opt.tau));
  IntegrateReport rep;
  if (observer) observer(state);
  double ref_u = norm2(state.blocks[0]);
  double ref_v = norm2(state.blocks[1]);
  for (int n = 1; n <= steps; ++n) {
    integrator.step(state, opt.tau);
    const double nu = norm2(state.blocks[0]);
    const double nv = norm2(state.blocks[1]);
    if (n == 1) {
      ref_u = std::max(ref_u, nu);
      ref_v = std::max(ref_v, nv);
    }
    if (!std::isfinite(nu) || !std::isfinite(nv) || nu > opt.growth_limit * ref_u ||
        nv > opt.growth_limit * ref_v) {
      throw StabilityError("instability detected at step " + std::to_string(n) + " (t = " +
                           std::to_string(state.t) + ")");
    }
    rep.steps = n;
    if (observer && (n == steps || (opt.observe_every > 0 && n % opt.observe_every == 0))) observer(state);
  }
  rep.t = state.t;
  return rep;
}

}  // namespace genalpha::integrator
