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

// Acceptance driver: one PASS/FAIL line per criterion. With arguments, runs
// only the listed criteria (1..9). Exit status 1 if any criterion fails.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "genalpha/assembly.hpp"
#include "genalpha/dirichlet.hpp"
#include "genalpha/integrator/integrator.hpp"
#include "genalpha/precond.hpp"
#include "genalpha/spectral.hpp"
#include "genalpha/study.hpp"

using namespace genalpha;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string format(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Least-squares slope of log y against log x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int column(const study::CsvTable& t, const std::string& name) {
  const auto& c = t.columns();
  return static_cast<int>(std::find(c.begin(), c.end(), name) - c.begin());
}

double num(const std::vector<std::string>& row, int col) { return std::stod(row[static_cast<std::size_t>(col)]); }

// Scalar system u'' + lambda u = 0 with unit mass.
struct Scalar {
  double one = 1.0, lam;
  assembly::SemiDiscreteSystem sys;
  integrator::PcgMassSolver solver;
  integrator::ZeroSource src{1};
  integrator::GenAlphaIntegrator it;
  Scalar(const integrator::GenAlphaParams& p, double lambda)
      : lam(lambda),
        sys(assembly::make_system(linalg::CsrMatrix::diagonal(std::span(&one, 1)),
                                  linalg::CsrMatrix::diagonal(std::span(&lam, 1)))),
        solver(sys.M),
        it(sys, p, solver, src) {}
};

// ---------------------------------------------------------------------------

Outcome temporal_order() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{true, ""};
  for (int k : {2, 1}) {
    auto c = study::parse_config(format(R"({"k": %d})", k), "time-convergence");
    const auto r = study::run_time_convergence(c);
    const auto& t = r.table;
    const int ct = column(t, "tau"), cu = column(t, "err_u_L2"), cv = column(t, "err_v_L2"),
              cs = column(t, "status");
    std::vector<std::tuple<double, double, double>> ok;
    for (const auto& row : t.rows()) {
      if (row[cs] == "ok") ok.emplace_back(num(row, ct), num(row, cu), num(row, cv));
    }
    std::sort(ok.begin(), ok.end());
    if (ok.size() < 3) {
      o.pass = false;
      o.detail += format("k=%d: fewer than three stable steps; ", k);
      continue;
    }
    std::vector<double> tau, eu, ev;
    for (int i = 0; i < 3; ++i) {
      tau.push_back(std::get<0>(ok[i]));
      eu.push_back(std::get<1>(ok[i]));
      ev.push_back(std::get<2>(ok[i]));
    }
    const double su = fit_slope(tau, eu), sv = fit_slope(tau, ev);
    const bool pass = std::abs(su - 2 * k) <= 0.15 && std::abs(sv - 2 * k) <= 0.15;
    o.pass = o.pass && pass;
    o.detail += format("k=%d slopes u %.3f v %.3f (target %d +- 0.15); ", k, su, sv, 2 * k);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.pass = o.pass && secs <= 120.0;
  o.detail += format("%.2f s (limit 120 s)", secs);
  return o;
}

Outcome spatial_order() {
  const auto t0 = std::chrono::steady_clock::now();
  auto c = study::parse_config(R"({"geometry": "quarter-annulus", "p": [1, 2, 3, 4], "n_sub": [8, 16, 32, 64],
                                   "tau": 1e-5, "steps": 64})",
                               "space-convergence");
  const auto r = study::run_space_convergence(c);
  const auto& t = r.table;
  const int cp = column(t, "p"), ch = column(t, "h"), ce = column(t, "rel_err_L2"), cs = column(t, "status");
  std::map<int, std::vector<std::pair<double, double>>> by_p;
  Outcome o{true, ""};
  for (const auto& row : t.rows()) {
    if (row[cs] != "ok") o.pass = false;
    by_p[static_cast<int>(num(row, cp))].emplace_back(num(row, ch), num(row, ce));
  }
  for (int p = 1; p <= 4; ++p) {
    auto& pts = by_p[p];
    std::sort(pts.begin(), pts.end());
    if (pts.size() < 3) {
      o.pass = false;
      continue;
    }
    // Finest three meshes.
    std::vector<double> h, e;
    for (int i = 0; i < 3; ++i) {
      h.push_back(pts[i].first);
      e.push_back(pts[i].second);
    }
    const double s = fit_slope(h, e);
    o.pass = o.pass && std::abs(s - (p + 1)) <= 0.2;
    o.detail += format("p=%d slope %.3f; ", p, s);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.pass = o.pass && secs <= 600.0;
  o.detail += format("%.1f s (limit 600 s)", secs);
  return o;
}

Outcome spectral_oracle() {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> th(0.0, 6.0), rh(0.0, 0.95), st(-1.0, 1.0);
  const double tau = 0.05;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 1 + trial % 3;
    const double theta = th(rng);
    const auto p = integrator::compute_params(k, rh(rng));
    const int n = 3 * k;
    std::vector<double> x(n);
    for (auto& v : x) v = st(rng);
    // One step of the scalar integrator on the unscaled state.
    Scalar s(p, theta / (tau * tau));
    integrator::IntegratorState state;
    for (int m = 0; m < n; ++m) state.blocks.push_back({x[m] / std::pow(tau, m)});
    s.it.step(state, tau);
    const auto g = spectral::build_G(p, theta);
    for (int i = 0; i < n; ++i) {
      double gx = 0.0;
      for (int j = 0; j < n; ++j) gx += g(i, j) * x[j];
      worst = std::max(worst, std::abs(state.blocks[i][0] * std::pow(tau, i) - gx));
    }
  }
  return {worst <= 1e-10, format("max |step - G x| = %.2e over 100 samples (limit 1e-10)", worst)};
}

Outcome stability_edge() {
  const double t99 = spectral::find_stability(integrator::compute_params(1, 0.99)).theta_max;
  Outcome o{std::abs(t99 - 4.0) <= 0.04, format("Theta_max(rho=0.99, k=1) = %.6f; ", t99)};
  double spread = 0.0;
  std::vector<std::string> notes;
  for (double rho : {0.0, 0.5, 0.9}) {
    double lo = INFINITY, hi = -INFINITY;
    for (int k : {1, 2, 3}) {
      const auto s = spectral::find_stability(integrator::compute_params(k, rho));
      lo = std::min(lo, s.theta_max);
      hi = std::max(hi, s.theta_max);
      for (const auto& d : s.diagnostics) notes.push_back(format("k=%d rho=%.2f: %s", k, rho, d.c_str()));
    }
    spread = std::max(spread, hi - lo);
    o.detail += format("rho=%.1f: %.7f; ", rho, lo);
  }
  o.pass = o.pass && spread <= 1e-6;
  o.detail += format("max spread over k = %.1e (limit 1e-6)", spread);
  for (const auto& n : notes) std::printf("  note (criterion 4, closed form): %s\n", n.c_str());
  return o;
}

Outcome dissipation_plateau() {
  double worst = 0.0;
  int samples = 0;
  const double tau = 0.1;
  for (int k : {1, 2, 3}) {
    for (double rho : {0.0, 0.3, 0.6, 0.9}) {
      const auto p = integrator::compute_params(k, rho);
      const double ob = p.block(k - 1).omega_b;
      const double tm = spectral::find_stability(p).theta_max;
      for (int i = 1; i <= 4; ++i) {
        const double theta = ob + (tm - ob) * i / 5.0;
        const auto spec = spectral::spectrum(p, theta);
        // Dominant real eigenvector of the first diagonal block, zero
        // elsewhere: an eigenvector of the block upper triangular G.
        const auto blk = spectral::build_G(p, theta).block(0);
        Eigen::Matrix3d b;
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c) b(r, c) = blk[3 * r + c];
        Eigen::EigenSolver<Eigen::Matrix3d> es(b);
        int dom = 0;
        for (int j = 1; j < 3; ++j)
          if (std::abs(es.eigenvalues()[j]) > std::abs(es.eigenvalues()[dom])) dom = j;
        const Eigen::Vector3d v = es.eigenvectors().col(dom).real();
        Scalar s(p, theta / (tau * tau));
        integrator::IntegratorState state;
        state.blocks.assign(3 * k, std::vector<double>(1, 0.0));
        for (int m = 0; m < 3; ++m) state.blocks[m][0] = v[m] / std::pow(tau, m);
        auto norm = [&] {
          double q = 0.0;
          for (int m = 0; m < 3 * k; ++m) q += std::pow(state.blocks[m][0] * std::pow(tau, m), 2);
          return std::sqrt(q);
        };
        double prev = norm(), ratio = 0.0;
        for (int n = 0; n < 20; ++n) {
          s.it.step(state, tau);
          const double cur = norm();
          ratio = cur / prev;
          prev = cur;
        }
        worst = std::max(worst, std::abs(ratio - spec.rho));
        ++samples;
      }
    }
  }
  return {worst <= 1e-8, format("max |decay - |lambda|| = %.2e over %d samples (limit 1e-8)", worst, samples)};
}

// Precond sweep shared by criteria 6 and 8.
const study::StudyResult& precond_sweep() {
  static const study::StudyResult r = [] {
    auto c = study::parse_config(
        R"({"geometries": ["quarter-annulus", "disk-sector", "ring-4"], "p": [1, 2, 3, 4],
            "n_sub": [8, 16, 32], "tau": 1e-5, "steps": 64, "pcg_tol": 1e-12})",
        "precond-iterations");
    return study::run_precond_iterations(c);
  }();
  return r;
}

struct PrecondRow {
  double n_dof, iterations, flops;
};

std::map<std::pair<std::string, int>, std::vector<PrecondRow>> precond_rows(bool& all_ok) {
  const auto& t = precond_sweep().table;
  const int cg = column(t, "geometry"), cp = column(t, "p"), cd = column(t, "n_dof"), ci = column(t, "iterations"),
            cf = column(t, "flops_per_apply"), cn = column(t, "n_sub"), cs = column(t, "status");
  std::map<std::pair<std::string, int>, std::vector<std::pair<int, PrecondRow>>> tmp;
  all_ok = true;
  for (const auto& row : t.rows()) {
    all_ok = all_ok && row[cs] == "ok";
    tmp[{row[cg], static_cast<int>(num(row, cp))}].push_back(
        {static_cast<int>(num(row, cn)), {num(row, cd), num(row, ci), num(row, cf)}});
  }
  std::map<std::pair<std::string, int>, std::vector<PrecondRow>> out;
  for (auto& [key, v] : tmp) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [n, row] : v) out[key].push_back(row);
  }
  return out;
}

Outcome precond_robustness() {
  bool ok = true;
  const auto rows = precond_rows(ok);
  Outcome o{ok, ""};
  for (const auto& [key, v] : rows) {
    const bool single = key.first != "ring-4";
    bool mono = true;
    double mx = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      mx = std::max(mx, v[i].iterations);
      if (i > 0 && v[i].iterations > v[i - 1].iterations) mono = false;
    }
    const bool pass = mono && (!single || mx <= 15.0);
    o.pass = o.pass && pass;
    std::string its;
    for (const auto& r : v) its += format("%s%.3f", its.empty() ? "" : "/", r.iterations);
    o.detail += format("%s p=%d %s%s; ", key.first.c_str(), key.second, its.c_str(), pass ? "" : " (violates)");
  }
  o.detail += "n_sub 8/16/32, tol 1e-12";
  return o;
}

Outcome asymptotic_exactness() {
  std::vector<double> kappa;
  for (int n : {4, 8, 16}) {
    const auto mp = geometry::build_multipatch(geometry::quarter_annulus(), 2, n);
    const auto g = assembly::assemble_multipatch(mp, 1.0, 1);
    const auto s = assembly::apply_dirichlet(g, mp.boundary_dofs(), 1.0);
    const auto pc = precond::build_schwarz(mp, g.patch_mass, s);
    const int m = s.size();
    Eigen::MatrixXd M(m, m), P(m, m);
    std::vector<double> e(m), col(m);
    const auto& local = pc->local(0).precond;
    for (int j = 0; j < m; ++j) {
      std::fill(e.begin(), e.end(), 0.0);
      e[j] = 1.0;
      local.apply(e, col);
      for (int i = 0; i < m; ++i) {
        P(i, j) = col[i];
        M(i, j) = s.M.coeff(i, j);
      }
    }
    // Eigenvalues of P^{-1/2} M P^{-1/2} are those of the pencil (M, P).
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(M, 0.5 * (P + P.transpose()),
                                                                 Eigen::EigenvaluesOnly);
    kappa.push_back(es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff());
  }
  const bool pass = kappa[0] > kappa[1] && kappa[1] > kappa[2] && kappa[2] >= 1.0;
  return {pass, format("kappa n_sub 4/8/16 = %.6f / %.6f / %.6f", kappa[0], kappa[1], kappa[2])};
}

Outcome cost_model() {
  bool ok = true;
  const auto rows = precond_rows(ok);
  Outcome o{ok, ""};
  double worst = 0.0;
  for (const auto& [key, v] : rows) {
    double mean = 0.0;
    for (const auto& r : v) mean += r.flops / r.n_dof;
    mean /= static_cast<double>(v.size());
    for (const auto& r : v) worst = std::max(worst, std::abs(r.flops / r.n_dof / mean - 1.0));
    o.detail += format("%s p=%d %.1f-%.1f flops/dof; ", key.first.c_str(), key.second,
                       v.front().flops / v.front().n_dof, v.back().flops / v.back().n_dof);
  }
  o.pass = o.pass && worst <= 0.2;
  o.detail += format("max deviation from mean %.1f%% (limit 20%%)", 100.0 * worst);
  return o;
}

Outcome parameter_identities() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int bad = 0;
  double min_alpha = INFINITY;
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 1 + static_cast<int>(u(rng) * 4.0);
    std::vector<double> b(k), s(k);
    for (int j = 0; j < k; ++j) {
      b[j] = u(rng) * 0.999;
      s[j] = b[j] * u(rng);
    }
    for (auto f : {integrator::BlockFormulas::derived, integrator::BlockFormulas::published}) {
      for (const auto& blk : integrator::compute_params(k, b, s, f).blocks) {
        if (blk.gamma - blk.alpha + blk.alpha_f != 0.5 || blk.alpha < 0.5) ++bad;
        min_alpha = std::min(min_alpha, blk.alpha);
      }
    }
  }
  return {bad == 0, format("%d violations over 1000 parameter sets, both block formula sets; min alpha %.6f", bad,
                           min_alpha)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"temporal order", temporal_order},
      {"spatial order", spatial_order},
      {"spectral oracle", spectral_oracle},
      {"stability edge", stability_edge},
      {"dissipation plateau", dissipation_plateau},
      {"preconditioner robustness", precond_robustness},
      {"asymptotic exactness", asymptotic_exactness},
      {"cost model", cost_model},
      {"parameter identities", parameter_identities},
  };
  std::set<int> pick;
  for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!pick.empty() && !pick.count(id)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %d %s: %s: %s\n", id, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
