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

#include "genalpha/problem.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "genalpha/error.hpp"
#include "genalpha/linalg/sparse.hpp"

namespace genalpha::problem {

namespace {

class ManufacturedSource final : public integrator::Source {
 public:
  ManufacturedSource(std::size_t n, const std::vector<WaveProblem::LoadTerm>& terms) : n_(n), terms_(terms) {}
  std::size_t size() const override { return n_; }
  void derivative(int a, double t, std::span<double> out) const override {
    std::fill(out.begin(), out.end(), 0.0);
    for (const auto& term : terms_) {
      linalg::axpy(term.time.derivative(a + 2, t), term.w2, out);
      linalg::axpy(term.time.derivative(a + 1, t), term.w1, out);
      linalg::axpy(term.time.derivative(a, t), term.w0, out);
    }
  }

 private:
  std::size_t n_;
  const std::vector<WaveProblem::LoadTerm>& terms_;
};

}  // namespace

WaveProblem::WaveProblem(ProblemSpec spec) : spec_(std::move(spec)) {
  mp_ = std::make_unique<geometry::MultiPatchSpace>(
      geometry::build_multipatch(spec_.geometry, spec_.degree, spec_.n_sub));
  const double omega = spec_.solution.omega;
  gm_ = assembly::assemble_multipatch(*mp_, omega, spec_.extra_points);
  sys_ = assembly::apply_dirichlet(gm_, mp_->boundary_dofs(), omega, spec_.damping);

  if (spec_.preconditioner == MassPreconditioner::schwarz) pc_ = precond::build_schwarz(*mp_, gm_.patch_mass, sys_);
  solver_ = make_solver();

  const int load_extra = spec_.extra_points + 2;
  const auto& d = spec_.damping;
  const double w2 = omega * omega;
  for (const auto& term : spec_.solution.terms) {
    LoadTerm lt;
    lt.time = term.time;
    lt.bs = assembly::assemble_multipatch_load(*mp_, term.space.value, load_extra);
    const auto lap = term.space.laplacian;
    const auto bl = assembly::assemble_multipatch_load(
        *mp_, [&](const geometry::Point& x) { return -w2 * lap(x); }, load_extra);
    lt.g = assembly::boundary_projection(*mp_, term.space.value);
    const auto bs_f = assembly::restrict_to_free(sys_, lt.bs);
    const auto bl_f = assembly::restrict_to_free(sys_, bl);
    const auto n = bs_f.size();
    lt.w2 = bs_f;
    sys_.M_fb.multiply_add(-1.0, lt.g, lt.w2);
    lt.w0 = bl_f;
    sys_.K_fb.multiply_add(-1.0, lt.g, lt.w0);
    lt.w1.assign(n, 0.0);
    if (sys_.damped()) {
      for (std::size_t i = 0; i < n; ++i) lt.w1[i] = d.a0 * bs_f[i] + d.a1 * bl_f[i];
      sys_.C_fb.multiply_add(-1.0, lt.g, lt.w1);
    }
    terms_.push_back(std::move(lt));
  }
  source_ = std::make_unique<ManufacturedSource>(static_cast<std::size_t>(sys_.size()), terms_);
}

std::unique_ptr<integrator::PcgMassSolver> WaveProblem::make_solver() const {
  if (pc_) return std::make_unique<integrator::PcgMassSolver>(sys_.M, pc_->as_operator(), spec_.pcg);
  return std::make_unique<integrator::PcgMassSolver>(sys_.M, spec_.pcg);
}

std::vector<double> WaveProblem::boundary_values(double t, int n) const {
  std::vector<double> g(sys_.boundary_dofs.size(), 0.0);
  for (const auto& term : terms_) linalg::axpy(term.time.derivative(n, t), term.g, g);
  return g;
}

std::pair<std::vector<double>, std::vector<double>> WaveProblem::initial_data(double t0) {
  const auto nf = static_cast<std::size_t>(sys_.size());
  auto project = [&](int n) {
    std::vector<double> b(static_cast<std::size_t>(mp_->size()), 0.0);
    for (const auto& term : terms_) linalg::axpy(term.time.derivative(n, t0), term.bs, b);
    auto rhs = assembly::restrict_to_free(sys_, b);
    sys_.M_fb.multiply_add(-1.0, boundary_values(t0, n), rhs);
    std::vector<double> x(nf, 0.0);
    const auto rep = solver_->solve(rhs, x);
    if (!rep.converged) throw ConvergenceError("initial projection did not converge");
    return x;
  };
  return {project(0), project(1)};
}

std::vector<double> WaveProblem::full(std::span<const double> free_values, double t, int n) const {
  return assembly::expand(sys_, free_values, boundary_values(t, n));
}

ErrorNorms WaveProblem::errors(const integrator::IntegratorState& state) const {
  const double t = state.t;
  const auto& sol = spec_.solution;
  const auto u = full(state.u(), t, 0);
  const auto v = full(state.v(), t, 1);
  ErrorNorms e;
  std::tie(e.u, e.u_norm) =
      assembly::l2_error(*mp_, u, [&](const geometry::Point& x) { return sol.value(x, t, 0); }, spec_.extra_points + 2);
  std::tie(e.v, e.v_norm) =
      assembly::l2_error(*mp_, v, [&](const geometry::Point& x) { return sol.value(x, t, 1); }, spec_.extra_points + 2);
  return e;
}

double WaveProblem::energy(const integrator::IntegratorState& state) const {
  const auto u = full(state.u(), state.t, 0);
  const auto v = full(state.v(), state.t, 1);
  std::vector<double> w(u.size());
  gm_.mass.multiply(v, w);
  double e = 0.5 * linalg::dot(v, w);
  gm_.stiffness.multiply(u, w);
  e += 0.5 * linalg::dot(u, w);
  return e;
}

double WaveProblem::mass_norm(std::span<const double> e) const {
  std::vector<double> w(e.size());
  sys_.M.multiply(e, w);
  return std::sqrt(std::max(0.0, linalg::dot(e, w)));
}

struct SemiDiscreteReference::Impl {
  Eigen::MatrixXd phi;       // M-orthonormal eigenvectors
  Eigen::VectorXd lambda;    // eigenvalues of M^-1 K
  Eigen::VectorXd hc, hs;    // homogeneous cos / sin coefficients
  // Particular solution: sum over terms of T_trig(t) pt + T_poly(t) pp.
  std::vector<Eigen::VectorXd> pt, pp;
  std::vector<manufactured::Temporal> time;
  double t0 = 0.0;
};

SemiDiscreteReference::SemiDiscreteReference(const WaveProblem& problem, std::span<const double> u0,
                                             std::span<const double> v0, double t0, int max_size)
    : impl_(std::make_unique<Impl>()) {
  const auto& sys = problem.system();
  const int n = sys.size();
  if (sys.damped()) throw UsageError("semi-discrete reference: damped systems are not supported");
  if (n > max_size) throw UsageError("semi-discrete reference: system too large for a dense solve");
  auto dense = [n](const linalg::CsrMatrix& a) {
    Eigen::MatrixXd d(n, n);
    const auto v = a.to_dense();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d(i, j) = v[static_cast<std::size_t>(i) * n + j];
    return d;
  };
  const Eigen::MatrixXd M = dense(sys.M);
  const Eigen::MatrixXd K = dense(sys.K);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K, M);
  if (es.info() != Eigen::Success) throw FactorizationError("semi-discrete reference: eigensolver failed");
  auto& im = *impl_;
  im.phi = es.eigenvectors();
  im.lambda = es.eigenvalues();
  im.t0 = t0;
  if (im.lambda.minCoeff() <= 0.0) throw UsageError("semi-discrete reference: stiffness must be positive definite");

  auto modal = [&](std::span<const double> x) {
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), n);
    return Eigen::VectorXd(im.phi.transpose() * (M * xv));
  };
  auto project = [&](const std::vector<double>& f) {
    Eigen::Map<const Eigen::VectorXd> fv(f.data(), n);
    return Eigen::VectorXd(im.phi.transpose() * fv);
  };
  // Undamped: F = T'' w2 + T w0; for the trigonometric part T'' = -c^2 T.
  Eigen::VectorXd up = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd vp = Eigen::VectorXd::Zero(n);
  for (const auto& term : problem.load_terms()) {
    const auto& T = term.time;
    const Eigen::VectorXd f0 = project(term.w0);
    const Eigen::VectorXd f2 = project(term.w2);
    Eigen::VectorXd pt(n), pp(n);
    for (int i = 0; i < n; ++i) {
      const double den = im.lambda(i) - T.c * T.c;
      if (std::abs(den) < 1e-12 * im.lambda(i)) throw UsageError("semi-discrete reference: resonant forcing");
      pt(i) = (f0(i) - T.c * T.c * f2(i)) / den;
      pp(i) = f0(i) / im.lambda(i);
    }
    manufactured::Temporal trig = T;
    trig.q0 = trig.q1 = 0.0;
    const double tp = T(t0) - trig(t0);
    const double dtp = T.derivative(1, t0) - trig.derivative(1, t0);
    up += trig(t0) * pt + tp * pp;
    vp += trig.derivative(1, t0) * pt + dtp * pp;
    im.pt.push_back(pt);
    im.pp.push_back(pp);
    im.time.push_back(T);
  }
  im.hc = modal(u0) - up;
  im.hs = modal(v0) - vp;
  for (int i = 0; i < n; ++i) im.hs(i) /= std::sqrt(im.lambda(i));
}

SemiDiscreteReference::~SemiDiscreteReference() = default;
SemiDiscreteReference::SemiDiscreteReference(SemiDiscreteReference&&) noexcept = default;
SemiDiscreteReference& SemiDiscreteReference::operator=(SemiDiscreteReference&&) noexcept = default;

void SemiDiscreteReference::evaluate(double t, std::vector<double>& u, std::vector<double>& v) const {
  const auto& im = *impl_;
  const auto n = im.lambda.size();
  Eigen::VectorXd q(n), dq(n);
  const double s = t - im.t0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double w = std::sqrt(im.lambda(i));
    q(i) = im.hc(i) * std::cos(w * s) + im.hs(i) * std::sin(w * s);
    dq(i) = w * (-im.hc(i) * std::sin(w * s) + im.hs(i) * std::cos(w * s));
  }
  for (std::size_t r = 0; r < im.time.size(); ++r) {
    manufactured::Temporal trig = im.time[r];
    trig.q0 = trig.q1 = 0.0;
    const auto& T = im.time[r];
    q += trig(t) * im.pt[r] + (T(t) - trig(t)) * im.pp[r];
    dq += trig.derivative(1, t) * im.pt[r] + (T.derivative(1, t) - trig.derivative(1, t)) * im.pp[r];
  }
  const Eigen::VectorXd uu = im.phi * q;
  const Eigen::VectorXd vv = im.phi * dq;
  u.assign(uu.data(), uu.data() + n);
  v.assign(vv.data(), vv.data() + n);
}

}  // namespace genalpha::problem
