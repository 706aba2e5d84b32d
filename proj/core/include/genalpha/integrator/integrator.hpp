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

// Explicit generalized-alpha time stepping of order 2k.

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "genalpha/dirichlet.hpp"
#include "genalpha/integrator/params.hpp"
#include "genalpha/linalg/pcg.hpp"

namespace genalpha::integrator {

/// Time derivatives F^(a)(t) of the load on the free unknowns.
class Source {
 public:
  virtual ~Source() = default;
  virtual std::size_t size() const = 0;
  /// out = F^(a)(t).
  virtual void derivative(int a, double t, std::span<double> out) const = 0;
};

class ZeroSource final : public Source {
 public:
  explicit ZeroSource(std::size_t n) : n_(n) {}
  std::size_t size() const override { return n_; }
  void derivative(int, double, std::span<double> out) const override;

 private:
  std::size_t n_;
};

/// Analytic callbacks, one per derivative order; `max_order` bounds what the
/// scheme may request.
class FunctionSource final : public Source {
 public:
  using Fn = std::function<void(int a, double t, std::span<double> out)>;
  FunctionSource(std::size_t n, int max_order, Fn fn) : n_(n), max_order_(max_order), fn_(std::move(fn)) {}
  std::size_t size() const override { return n_; }
  void derivative(int a, double t, std::span<double> out) const override;

 private:
  std::size_t n_;
  int max_order_;
  Fn fn_;
};

/// Derivatives of F(t) by central differences with step h; logs a warning
/// once on construction.
class FiniteDifferenceSource final : public Source {
 public:
  using Fn = std::function<void(double t, std::span<double> out)>;
  FiniteDifferenceSource(std::size_t n, double h, Fn fn);
  std::size_t size() const override { return n_; }
  void derivative(int a, double t, std::span<double> out) const override;

 private:
  std::size_t n_;
  double h_;
  Fn fn_;
};

/// Solves M x = b; implementations count their work.
class MassSolver {
 public:
  virtual ~MassSolver() = default;
  virtual linalg::PcgReport solve(std::span<const double> b, std::span<double> x) = 0;
  long solves() const noexcept { return solves_; }
  long iterations() const noexcept { return iterations_; }
  void reset_counters() noexcept { solves_ = iterations_ = 0; }

 protected:
  long solves_ = 0;
  long iterations_ = 0;
};

/// PCG with zero initial guess.
class PcgMassSolver final : public MassSolver {
 public:
  PcgMassSolver(const linalg::CsrMatrix& m, linalg::LinearOperator pinv, linalg::PcgOptions options = {});
  /// Jacobi preconditioning.
  explicit PcgMassSolver(const linalg::CsrMatrix& m, linalg::PcgOptions options = {});
  linalg::PcgReport solve(std::span<const double> b, std::span<double> x) override;
  const linalg::PcgOptions& options() const noexcept { return options_; }

 private:
  const linalg::CsrMatrix& m_;
  linalg::LinearOperator pinv_;
  linalg::PcgOptions options_;
};

/// t_n and the blocks D_0 = U, D_1 = V, D_2 = A, D_{2+a} = L^a(A), a <= 3k-3,
/// stored unscaled.
struct IntegratorState {
  double t = 0.0;
  std::vector<std::vector<double>> blocks;
  const std::vector<double>& u() const { return blocks[0]; }
  const std::vector<double>& v() const { return blocks[1]; }
};

/// Numerically verified stability limit (minimum over blocks).
double stability_limit(const GenAlphaParams& params);

/// tau = safety * sqrt(theta_max / lambda_max). Throws DomainError for
/// lambda_max <= 0 or safety outside (0, 1].
double cfl_timestep(double lambda_max, double theta_max, double safety = 1.0);

/// lambda_max(M^{-1} K) by power iteration.
double estimate_lambda_max(const assembly::SemiDiscreteSystem& system, MassSolver& solver);

class GenAlphaIntegrator {
 public:
  GenAlphaIntegrator(const assembly::SemiDiscreteSystem& system, GenAlphaParams params, MassSolver& solver,
                     const Source& source);

  const GenAlphaParams& params() const noexcept { return params_; }

  /// U0, V0 given; A0 and the L^a(A0) from cascaded mass solves.
  /// Throws ConvergenceError if a solve misses its tolerance.
  IntegratorState init_state(std::span<const double> u0, std::span<const double> v0, double t0 = 0.0);

  /// One step of size tau: exactly k mass solves. Throws ConvergenceError
  /// carrying the 1-based block index on a failed solve.
  void step(IntegratorState& state, double tau);

 private:
  void solve(std::span<const double> b, std::span<double> x, int block);

  const assembly::SemiDiscreteSystem& sys_;
  GenAlphaParams params_;
  MassSolver& solver_;
  const Source& source_;
  std::vector<std::vector<double>> next_;
  std::vector<double> w1_, w2_, w3_;
};

struct IntegrateOptions {
  double tau = 0.0;
  double t_end = 0.0;
  int observe_every = 1;  ///< observer cadence in steps; 0 observes only start and end
  /// Largest stable step; checked unless `unsafe`. Ignored when <= 0.
  double cfl_tau = 0.0;
  bool unsafe = false;
  double growth_limit = 1e6;  ///< instability detector threshold on ||U|| and ||V||
};

struct IntegrateReport {
  int steps = 0;
  double t = 0.0;
};

using Observer = std::function<void(const IntegratorState&)>;

/// Runs round(t_end / tau) steps from `state`, calling `observer` at the
/// requested cadence (always at the start and the end). Throws StabilityError
/// when tau exceeds cfl_tau without `unsafe`, or when ||U|| or ||V|| grows
/// past growth_limit times its reference size.
IntegrateReport integrate(GenAlphaIntegrator& integrator, IntegratorState& state, const IntegrateOptions& options,
                          const Observer& observer = {});

}  // namespace genalpha::integrator
