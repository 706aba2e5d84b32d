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

#include "genalpha/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

#include "genalpha/error.hpp"
#include "genalpha/geometry.hpp"
#include "genalpha/integrator/integrator.hpp"
#include "genalpha/parallel.hpp"
#include "genalpha/problem.hpp"
#include "genalpha/spectral.hpp"

namespace genalpha::study {

using integrator::GenAlphaParams;

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != columns_.size()) throw UsageError("CSV row width does not match the header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::to_string() const {
  std::ostringstream os;
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
  return os.str();
}

void CsvTable::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open '" + path + "' for writing");
  out << to_string();
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, int window) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(y[i])) pts.emplace_back(std::log(x[i]), std::log(y[i]));
  }
  if (static_cast<int>(pts.size()) > window) pts.erase(pts.begin(), pts.end() - window);
  if (pts.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (const auto& [a, b] : pts) {
    mx += a;
    my += b;
  }
  mx /= pts.size();
  my /= pts.size();
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [a, b] : pts) {
    sxy += (a - mx) * (b - my);
    sxx += (a - mx) * (a - mx);
  }
  return sxy / sxx;
}

namespace {

template <class T>
T single(const std::vector<T>& v, T fallback, const char* name) {
  if (v.empty()) return fallback;
  if (v.size() > 1) throw ConfigError(std::string("'") + name + "' must be a single value for this study");
  return v.front();
}

template <class T>
std::vector<T> or_default(const std::vector<T>& v, std::vector<T> fallback) {
  return v.empty() ? fallback : v;
}

geometry::Geometry resolve_geometry(const StudyConfig& c, const std::string& name) {
  try {
    if (!c.geometry_file.empty()) return geometry::load_geometry(c.geometry_file);
    return geometry::builtin_geometry(name);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("geometry: ") + e.what());
  }
}

GenAlphaParams make_params(const StudyConfig& c, int k, double rho) {
  try {
    if (!c.rho_b.empty()) return integrator::compute_params(k, c.rho_b, c.rho_s, c.formulas);
    return integrator::compute_params(k, rho, c.formulas);
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
}

std::vector<double> rho_list(const StudyConfig& c) {
  if (!c.rho_b.empty()) return {c.rho_b.back()};
  return or_default(c.rho, {0.5});
}

double theta_max_cached(const GenAlphaParams& p) {
  static std::mutex mu;
  static std::map<std::vector<double>, double> cache;
  std::vector<double> key{static_cast<double>(p.k), static_cast<double>(p.formulas)};
  for (const auto& b : p.blocks) {
    key.push_back(b.rho_b);
    key.push_back(b.rho_s);
  }
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const double t = integrator::stability_limit(p);
  std::lock_guard lock(mu);
  cache[key] = t;
  return t;
}

problem::ProblemSpec make_spec(const StudyConfig& c, geometry::Geometry g, int p, int n_sub,
                               const std::string& default_solution) {
  problem::ProblemSpec s;
  const int dim = g.dim();
  s.geometry = std::move(g);
  s.degree = p;
  s.n_sub = n_sub;
  s.solution = manufactured::by_name(c.solution.empty() ? default_solution : c.solution, dim, c.omega);
  s.damping = c.damping;
  s.extra_points = c.extra_points;
  s.pcg.rel_tol = c.pcg_tol;
  s.preconditioner =
      c.preconditioner == "jacobi" ? problem::MassPreconditioner::jacobi : problem::MassPreconditioner::schwarz;
  return s;
}

int step_count(const StudyConfig& c, double tau, double default_t) {
  if (c.steps) return *c.steps;
  const double t = c.t_end.value_or(default_t);
  return std::max(1, static_cast<int>(std::llround(t / tau)));
}

// Runs `body(i)` for every cell concurrently; the first exception is rethrown
// after all cells finish.
void for_each_cell(int n, const std::function<void(int)>& body) {
  std::mutex mu;
  std::exception_ptr first;
  parallel_for(
      n,
      [&](int i) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!first) first = std::current_exception();
        }
      },
      1);
  if (first) std::rethrow_exception(first);
}

struct RunOutcome {
  std::string status = "ok";
  integrator::IntegratorState state;
  double theta_ratio = 0.0;  ///< tau^2 lambda_max / Theta_max
};

// Integrates `steps` steps of size tau from the projected initial data.
// Steps above the CFL limit are skipped ("cfl") unless `unsafe`; blow-ups
// end the run with status "unstable".
RunOutcome simulate(const problem::WaveProblem& prob, const GenAlphaParams& params, double tau, int steps,
                    bool unsafe, std::span<const double> u0, std::span<const double> v0, double lambda_max,
                    const integrator::Observer& observer = {}, int observe_every = 0) {
  RunOutcome out;
  const double theta_max = theta_max_cached(params);
  out.theta_ratio = tau * tau * lambda_max / theta_max;
  if (out.theta_ratio > 1.0 && !unsafe) {
    out.status = "cfl";
    return out;
  }
  auto solver = prob.make_solver();
  integrator::GenAlphaIntegrator integ(prob.system(), params, *solver, prob.source());
  out.state = integ.init_state(u0, v0, 0.0);
  integrator::IntegrateOptions opt;
  opt.tau = tau;
  opt.t_end = steps * tau;
  opt.observe_every = observe_every;
  opt.unsafe = true;
  try {
    integrator::integrate(integ, out.state, opt, observer);
  } catch (const StabilityError&) {
    out.status = "unstable";
  }
  return out;
}

double lambda_max_of(problem::WaveProblem& prob) {
  return integrator::estimate_lambda_max(prob.system(), prob.solver());
}

}  // namespace

StudyResult run_time_convergence(const StudyConfig& c) {
  const auto geom = resolve_geometry(c, c.geometry.empty() ? "unit-interval" : c.geometry);
  const int p = single(c.degrees, 5, "degrees");
  const int n_sub = single(c.n_sub, 64, "n_sub");
  const int k = single(c.k, 2, "k");
  const double rho = single(rho_list(c), 0.5, "rho");
  auto taus = or_default(c.tau, {4e-3, 2e-3, 1e-3, 5e-4, 2.5e-4});
  std::sort(taus.begin(), taus.end(), std::greater<>());
  const double t_end = c.t_end.value_or(0.1);
  const auto params = make_params(c, k, rho);

  problem::WaveProblem prob(make_spec(c, geom, p, n_sub, "standing-wave"));
  const double lmax = lambda_max_of(prob);
  const auto [u0, v0] = prob.initial_data();
  const bool semi = c.reference == "semi-discrete";
  std::optional<problem::SemiDiscreteReference> ref;
  if (semi) ref.emplace(prob, u0, v0);

  const int n = static_cast<int>(taus.size());
  std::vector<double> eu(n, std::nan("")), ev(n, std::nan(""));
  std::vector<std::string> status(n);
  for_each_cell(n, [&](int i) {
    const double tau = taus[i];
    const int steps = std::max(1, static_cast<int>(std::llround(t_end / tau)));
    auto r = simulate(prob, params, tau, steps, c.unsafe, u0, v0, lmax);
    status[i] = r.status;
    if (r.status != "ok") return;
    if (semi) {
      std::vector<double> ur, vr;
      ref->evaluate(r.state.t, ur, vr);
      for (std::size_t q = 0; q < ur.size(); ++q) {
        ur[q] -= r.state.u()[q];
        vr[q] -= r.state.v()[q];
      }
      eu[i] = prob.mass_norm(ur);
      ev[i] = prob.mass_norm(vr);
    } else {
      const auto e = prob.errors(r.state);
      eu[i] = e.u;
      ev[i] = e.v;
    }
  });

  StudyResult res;
  std::vector<double> st, su, sv;
  for (int i = 0; i < n; ++i) {
    if (status[i] == "ok") {
      st.push_back(taus[i]);
      su.push_back(eu[i]);
      sv.push_back(ev[i]);
    } else {
      ++res.aborted;
    }
  }
  const double slope_u = loglog_slope(st, su);
  const double slope_v = loglog_slope(st, sv);
  res.table = CsvTable({"tau", "err_u_L2", "err_v_L2", "slope_u", "slope_v", "status"});
  for (int i = 0; i < n; ++i) {
    res.table.add_row({fmt(taus[i]), fmt(eu[i]), fmt(ev[i]), fmt(slope_u), fmt(slope_v), status[i]});
  }
  res.log.push_back("lambda_max = " + fmt(lmax) + ", cfl tau = " +
                    fmt(integrator::cfl_timestep(lmax, theta_max_cached(params))));
  return res;
}

StudyResult run_space_convergence(const StudyConfig& c) {
  const std::string gname = c.geometry.empty() ? "quarter-annulus" : c.geometry;
  const auto degrees = or_default(c.degrees, {1, 2, 3, 4});
  auto subs = or_default(c.n_sub, {8, 16, 32, 64});
  std::sort(subs.begin(), subs.end());
  const int k = single(c.k, 2, "k");
  const double rho = single(rho_list(c), 0.5, "rho");
  const double tau = single(c.tau, 1e-5, "tau");
  const int steps = step_count(c, tau, 64 * tau);
  const auto params = make_params(c, k, rho);
  const auto geom = resolve_geometry(c, gname);

  const int np = static_cast<int>(degrees.size());
  const int ns = static_cast<int>(subs.size());
  std::vector<double> eu(np * ns, std::nan("")), ev(np * ns, std::nan(""));
  std::vector<std::string> status(np * ns);
  for_each_cell(np * ns, [&](int cell) {
    const int p = degrees[cell / ns];
    const int n_sub = subs[cell % ns];
    problem::WaveProblem prob(make_spec(c, geom, p, n_sub, "smooth-sine"));
    const double lmax = lambda_max_of(prob);
    const auto [u0, v0] = prob.initial_data();
    auto r = simulate(prob, params, tau, steps, c.unsafe, u0, v0, lmax);
    status[cell] = r.status;
    if (r.status != "ok") return;
    const auto e = prob.errors(r.state);
    eu[cell] = e.rel_u();
    ev[cell] = e.rel_v();
  });

  StudyResult res;
  res.table = CsvTable({"p", "n_sub", "h", "rel_err_L2", "rel_err_v_L2", "slope", "status"});
  for (int a = 0; a < np; ++a) {
    std::vector<double> h, e;
    for (int b = 0; b < ns; ++b) {
      if (status[a * ns + b] != "ok") continue;
      h.push_back(1.0 / subs[b]);
      e.push_back(eu[a * ns + b]);
    }
    const double slope = loglog_slope(h, e);  // finest meshes last
    for (int b = 0; b < ns; ++b) {
      const int cell = a * ns + b;
      if (status[cell] != "ok") ++res.aborted;
      res.table.add_row({std::to_string(degrees[a]), std::to_string(subs[b]), fmt(1.0 / subs[b]), fmt(eu[cell]),
                         fmt(ev[cell]), fmt(slope), status[cell]});
    }
  }
  return res;
}

StudyResult run_dispersion(const StudyConfig& c) {
  const auto geom = resolve_geometry(c, c.geometry.empty() ? "unit-interval" : c.geometry);
  if (geom.dim() != 1) throw ConfigError("dispersion study needs a 1D geometry");
  const int p = single(c.degrees, 4, "degrees");
  const int n_sub = single(c.n_sub, 400, "n_sub");
  const auto modes = or_default(c.modes, {1, 2, 4, 8, 16, 32, 64, 128, 256});
  const auto ks = or_default(c.k, {1, 2});
  const auto rhos = or_default(c.rho, {0.1, 0.5, 0.9});
  const auto taus = or_default(c.tau, {0.05, 1e-3});
  const double t_end = c.t_end.value_or(5.0);

  struct Cell {
    int j, k;
    double rho, tau;
    double err = std::nan("");
    double ratio = 0.0;
    std::string status;
  };
  std::vector<Cell> cells;
  for (int j : modes)
    for (double tau : taus)
      for (int k : ks)
        for (double rho : rhos) cells.push_back({j, k, rho, tau, std::nan(""), 0.0, ""});

  // One discretization per mode; cells of the same mode share it.
  for (int j : modes) {
    StudyConfig cj = c;
    cj.solution = "dispersion-" + std::to_string(j);
    cj.omega = 1.0;
    auto spec = make_spec(cj, geom, p, n_sub, cj.solution);
    problem::WaveProblem prob(std::move(spec));
    const double lmax = lambda_max_of(prob);
    const auto [u0, v0] = prob.initial_data();
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
      if (cells[i].j == j) idx.push_back(i);
    }
    for_each_cell(static_cast<int>(idx.size()), [&](int q) {
      Cell& cell = cells[idx[q]];
      const auto params = make_params(c, cell.k, cell.rho);
      const int steps = std::max(1, static_cast<int>(std::llround(t_end / cell.tau)));
      // The study deliberately probes steps beyond the stability limit.
      auto r = simulate(prob, params, cell.tau, steps, true, u0, v0, lmax);
      cell.ratio = r.theta_ratio;
      cell.status = r.status;
      if (r.status == "ok") cell.err = prob.errors(r.state).rel_u();
    });
  }

  StudyResult res;
  res.table = CsvTable({"j", "k", "rho", "tau", "rel_err_L2", "theta_ratio", "status"});
  for (const auto& cell : cells) {
    res.table.add_row({std::to_string(cell.j), std::to_string(cell.k), fmt(cell.rho), fmt(cell.tau), fmt(cell.err),
                       fmt(cell.ratio), cell.status});
  }
  return res;
}

StudyResult run_precond_iterations(const StudyConfig& c) {
  std::vector<std::string> names = c.geometries;
  if (names.empty()) names = {c.geometry.empty() ? "quarter-annulus" : c.geometry};
  const auto degrees = or_default(c.degrees, {1, 2, 3, 4});
  auto subs = or_default(c.n_sub, {8, 16, 32});
  std::sort(subs.begin(), subs.end());
  const int k = single(c.k, 2, "k");
  const double rho = single(rho_list(c), 0.5, "rho");
  const double tau = single(c.tau, 1e-5, "tau");
  const int steps = step_count(c, tau, 64 * tau);
  const auto params = make_params(c, k, rho);
  std::vector<geometry::Geometry> geoms;
  for (const auto& n : names) geoms.push_back(resolve_geometry(c, n));

  struct Cell {
    int g, p, n_sub;
    int n_dof = 0;
    double iters = std::nan("");
    double kappa = std::nan("");
    double flops = 0.0;
    std::string status;
  };
  std::vector<Cell> cells;
  for (int g = 0; g < static_cast<int>(geoms.size()); ++g)
    for (int p : degrees)
      for (int s : subs) cells.push_back({g, p, s, 0, std::nan(""), std::nan(""), 0.0, ""});

  for_each_cell(static_cast<int>(cells.size()), [&](int i) {
    Cell& cell = cells[i];
    problem::WaveProblem prob(make_spec(c, geoms[cell.g], cell.p, cell.n_sub, "smooth-sine"));
    cell.n_dof = prob.system().size();
    if (prob.preconditioner()) cell.flops = static_cast<double>(prob.preconditioner()->flops());
    const double lmax = lambda_max_of(prob);
    const auto [u0, v0] = prob.initial_data();
    // Count only the solves made by the time steps.
    const double theta_max = theta_max_cached(params);
    if (tau * tau * lmax > theta_max && !c.unsafe) {
      cell.status = "cfl";
      return;
    }
    auto solver = prob.make_solver();
    integrator::GenAlphaIntegrator integ(prob.system(), params, *solver, prob.source());
    auto state = integ.init_state(u0, v0);
    solver->reset_counters();
    integrator::IntegrateOptions opt;
    opt.tau = tau;
    opt.t_end = steps * tau;
    opt.observe_every = 0;
    opt.unsafe = true;
    try {
      integrator::integrate(integ, state, opt);
    } catch (const StabilityError&) {
      cell.status = "unstable";
      return;
    }
    cell.iters = static_cast<double>(solver->iterations()) / static_cast<double>(solver->solves());
    // Condition estimate from one extra solve with a fixed pseudo-random right-hand side.
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> b(static_cast<std::size_t>(cell.n_dof)), x(b.size());
    for (auto& v : b) v = dist(rng);
    auto o = prob.spec().pcg;
    o.estimate_condition = true;
    const auto& M = prob.system().M;
    linalg::LinearOperator pinv;
    if (prob.preconditioner()) {
      pinv = prob.preconditioner()->as_operator();
    } else {
      pinv = [d = M.diagonal()](std::span<const double> in, std::span<double> out) {
        for (std::size_t q = 0; q < in.size(); ++q) out[q] = in[q] / d[q];
      };
    }
    const auto rep = linalg::pcg([&](std::span<const double> in, std::span<double> out) { M.multiply(in, out); },
                                 pinv, b, x, o);
    cell.kappa = rep.condition_estimate();
    cell.status = "ok";
  });

  StudyResult res;
  res.table = CsvTable({"geometry", "p", "n_sub", "n_dof", "iterations", "kappa_estimate", "flops_per_apply", "status"});
  for (const auto& cell : cells) {
    if (cell.status != "ok") ++res.aborted;
    res.table.add_row({names[cell.g], std::to_string(cell.p), std::to_string(cell.n_sub), std::to_string(cell.n_dof),
                       fmt(cell.iters), fmt(cell.kappa), fmt(cell.flops), cell.status});
  }
  return res;
}

StudyResult run_spectrum(const StudyConfig& c) {
  const auto ks = or_default(c.k, {1});
  const auto rhos = or_default(c.rho, {0.0, 0.5, 0.9, 0.99});
  const int kmax = *std::max_element(ks.begin(), ks.end());
  std::vector<double> thetas(static_cast<std::size_t>(c.theta_samples));
  for (int i = 0; i < c.theta_samples; ++i) {
    thetas[i] = c.theta_min + (c.theta_max - c.theta_min) * i / (c.theta_samples - 1);
  }
  std::vector<std::string> cols{"k", "rho", "theta", "rho_G"};
  for (int i = 1; i <= 3 * kmax; ++i) {
    cols.push_back("re_lambda_" + std::to_string(i));
    cols.push_back("im_lambda_" + std::to_string(i));
  }
  StudyResult res;
  res.table = CsvTable(cols);
  CsvTable summary({"k", "rho", "block", "theta_max", "block_theta_max", "omega_b", "omega_b_closed",
                    "omega_s_closed", "note"});
  for (int k : ks) {
    for (double rho : rhos) {
      const auto params = make_params(c, k, rho);
      for (const auto& s : spectral::spectrum_sweep(params, thetas)) {
        std::vector<std::string> row{std::to_string(k), fmt(rho), fmt(s.theta), fmt(s.rho)};
        for (const auto& l : s.eigenvalues) {
          row.push_back(fmt(l.real()));
          row.push_back(fmt(l.imag()));
        }
        row.resize(cols.size());
        res.table.add_row(std::move(row));
      }
      const auto stab = spectral::find_stability(params);
      for (int j = 0; j < k; ++j) {
        const auto bif = spectral::find_bifurcation(params, j);
        std::string note;
        for (const auto& d : stab.diagnostics) {
          if (d.find("block " + std::to_string(j + 1)) != std::string::npos) note += (note.empty() ? "" : "; ") + d;
        }
        for (char& ch : note) {
          if (ch == ',') ch = ';';
        }
        summary.add_row({std::to_string(k), fmt(rho), std::to_string(j + 1), fmt(stab.theta_max),
                         fmt(stab.block_theta_max[j]), bif.found ? fmt(bif.theta) : "nan",
                         fmt(params.block(j).omega_b), fmt(stab.closed_form[j]), note});
        for (const auto& d : stab.diagnostics) res.log.push_back(d);
      }
    }
  }
  res.summary = std::move(summary);
  return res;
}

StudyResult run_trajectory(const StudyConfig& c) {
  const auto geom = resolve_geometry(c, c.geometry.empty() ? "unit-interval" : c.geometry);
  const int p = single(c.degrees, 3, "degrees");
  const int n_sub = single(c.n_sub, 32, "n_sub");
  const int k = single(c.k, 2, "k");
  const double rho = single(rho_list(c), 0.5, "rho");
  const auto params = make_params(c, k, rho);
  problem::WaveProblem prob(make_spec(c, geom, p, n_sub, "standing-wave"));
  const double lmax = lambda_max_of(prob);
  const double tau_cfl = integrator::cfl_timestep(lmax, theta_max_cached(params));
  double tau = 0.0;
  if (!c.tau.empty()) {
    tau = single(c.tau, 0.0, "tau");
  } else {
    tau = integrator::cfl_timestep(lmax, theta_max_cached(params), c.cfl_safety.value_or(0.9));
  }
  const int steps = step_count(c, tau, 0.1);
  const auto [u0, v0] = prob.initial_data();

  StudyResult res;
  res.table = CsvTable({"t", "L2_error_u", "L2_error_v", "energy"});
  auto observer = [&](const integrator::IntegratorState& s) {
    const auto e = prob.errors(s);
    res.table.add_row({fmt(s.t), fmt(e.u), fmt(e.v), fmt(prob.energy(s))});
  };
  const auto r = simulate(prob, params, tau, steps, c.unsafe, u0, v0, lmax, observer, c.observe_every);
  res.log.push_back("tau = " + fmt(tau) + ", cfl tau = " + fmt(tau_cfl) + ", steps = " + std::to_string(steps));
  if (r.status != "ok") {
    ++res.aborted;
    res.log.push_back(r.status == "cfl" ? "aborted: tau exceeds the CFL limit" : "aborted: instability detected");
  }
  return res;
}

StudyResult run_export_matrices(const StudyConfig& c) {
  const auto geom = resolve_geometry(c, c.geometry.empty() ? "unit-square" : c.geometry);
  const int p = single(c.degrees, 2, "degrees");
  const int n_sub = single(c.n_sub, 8, "n_sub");
  const auto mp = geometry::build_multipatch(geom, p, n_sub);
  const auto gm = assembly::assemble_multipatch(mp, c.omega, c.extra_points);
  std::ostringstream os;
  if (c.reduced) {
    const auto sys = assembly::apply_dirichlet(gm, mp.boundary_dofs(), c.omega);
    (c.matrix == "mass" ? sys.M : sys.K).write_triplets(os);
  } else {
    (c.matrix == "mass" ? gm.mass : gm.stiffness).write_triplets(os);
  }
  StudyResult res;
  res.text = os.str();
  return res;
}

StudyResult run_export_geometry(const StudyConfig& c) {
  const auto geom = resolve_geometry(c, c.geometry.empty() ? "quarter-annulus" : c.geometry);
  StudyResult res;
  res.text = geometry::geometry_to_json(geom);
  return res;
}

std::vector<std::string> study_kinds() {
  return {"time-convergence", "space-convergence", "dispersion",      "precond-iterations",
          "spectrum",         "run",               "export-matrices", "export-geometry"};
}

StudyResult run_study(const StudyConfig& c) {
  if (c.study == "time-convergence") return run_time_convergence(c);
  if (c.study == "space-convergence") return run_space_convergence(c);
  if (c.study == "dispersion") return run_dispersion(c);
  if (c.study == "precond-iterations") return run_precond_iterations(c);
  if (c.study == "spectrum") return run_spectrum(c);
  if (c.study == "run") return run_trajectory(c);
  if (c.study == "export-matrices") return run_export_matrices(c);
  if (c.study == "export-geometry") return run_export_geometry(c);
  throw ConfigError("unknown study '" + c.study + "'");
}

}  // namespace genalpha::study
