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

// A manufactured wave problem on a multi-patch spline space: matrices,
// Dirichlet lift, load derivatives, initial data and error measures.

#include <memory>
#include <vector>

#include "genalpha/assembly.hpp"
#include "genalpha/dirichlet.hpp"
#include "genalpha/geometry.hpp"
#include "genalpha/integrator/integrator.hpp"
#include "genalpha/manufactured.hpp"
#include "genalpha/precond.hpp"

namespace genalpha::problem {

enum class MassPreconditioner { schwarz, jacobi };

struct ProblemSpec {
  geometry::Geometry geometry;
  int degree = 2;
  int n_sub = 8;
  manufactured::ManufacturedSolution solution;
  assembly::Damping damping;
  int extra_points = 1;  ///< quadrature points per direction beyond p+1 for M and K
  linalg::PcgOptions pcg;
  MassPreconditioner preconditioner = MassPreconditioner::schwarz;
};

struct ErrorNorms {
  double u = 0.0;       ///< ||u_h - u||
  double v = 0.0;       ///< ||v_h - u_t||
  double u_norm = 0.0;  ///< ||u||
  double v_norm = 0.0;  ///< ||u_t||
  double rel_u() const { return u_norm > 0.0 ? u / u_norm : u; }
  double rel_v() const { return v_norm > 0.0 ? v / v_norm : v; }
};

class WaveProblem {
 public:
  explicit WaveProblem(ProblemSpec spec);
  WaveProblem(const WaveProblem&) = delete;
  WaveProblem& operator=(const WaveProblem&) = delete;

  const ProblemSpec& spec() const noexcept { return spec_; }
  const geometry::MultiPatchSpace& space() const noexcept { return *mp_; }
  const assembly::GlobalMatrices& matrices() const noexcept { return gm_; }
  const assembly::SemiDiscreteSystem& system() const noexcept { return sys_; }
  /// Null when Jacobi preconditioning is selected.
  const precond::SchwarzPrecond* preconditioner() const noexcept { return pc_.get(); }
  integrator::PcgMassSolver& solver() noexcept { return *solver_; }
  /// An independent solver with the same preconditioner, for concurrent use.
  std::unique_ptr<integrator::PcgMassSolver> make_solver() const;
  const integrator::Source& source() const noexcept { return *source_; }

  /// n-th time derivative of the Dirichlet lift, ordered like boundary_dofs.
  std::vector<double> boundary_values(double t, int n = 0) const;
  /// Constrained L2 projections of u(., t0) and u_t(., t0) onto the free unknowns.
  std::pair<std::vector<double>, std::vector<double>> initial_data(double t0 = 0.0);
  /// Free values plus lift at time t (derivative n) as global coefficients.
  std::vector<double> full(std::span<const double> free_values, double t, int n = 0) const;

  ErrorNorms errors(const integrator::IntegratorState& state) const;
  /// 1/2 V.M V + 1/2 U.K U on the full (lifted) coefficients.
  double energy(const integrator::IntegratorState& state) const;
  /// sqrt(e.M e) on the free unknowns.
  double mass_norm(std::span<const double> e) const;

  /// Per term of the solution: F = T'' w2 + T' w1 + T w0 on the free unknowns.
  struct LoadTerm {
    std::vector<double> w0, w1, w2;
    std::vector<double> g;   ///< lift coefficients of S on the boundary
    std::vector<double> bs;  ///< (S, B_i) for every global i
    manufactured::Temporal time;
  };
  const std::vector<LoadTerm>& load_terms() const noexcept { return terms_; }

 private:
  ProblemSpec spec_;
  std::unique_ptr<geometry::MultiPatchSpace> mp_;
  assembly::GlobalMatrices gm_;
  assembly::SemiDiscreteSystem sys_;
  std::shared_ptr<precond::SchwarzPrecond> pc_;
  std::unique_ptr<integrator::PcgMassSolver> solver_;
  std::vector<LoadTerm> terms_;
  std::unique_ptr<integrator::Source> source_;
};

/// Exact solution of the undamped semi-discrete system M U'' + K U = F from
/// given initial data, by a dense generalized eigendecomposition. Throws
/// UsageError when the system is damped or larger than max_size.
class SemiDiscreteReference {
 public:
  SemiDiscreteReference(const WaveProblem& problem, std::span<const double> u0, std::span<const double> v0,
                        double t0 = 0.0, int max_size = 4000);
  ~SemiDiscreteReference();
  SemiDiscreteReference(SemiDiscreteReference&&) noexcept;
  SemiDiscreteReference& operator=(SemiDiscreteReference&&) noexcept;
  /// Free displacement and velocity at time t.
  void evaluate(double t, std::vector<double>& u, std::vector<double>& v) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace genalpha::problem
