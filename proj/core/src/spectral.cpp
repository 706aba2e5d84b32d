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

#include "genalpha/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <cstdio>

#include "genalpha/error.hpp"

namespace genalpha::spectral {

namespace {

double inv_factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return 1.0 / f;
}

constexpr double kScanStep = 1e-3;
constexpr double kScanMax = 20.0;
constexpr double kBisectTol = 1e-10;
constexpr double kRadiusTol = 1e-10;

}  // namespace

AmplificationMatrix::AmplificationMatrix(const GenAlphaParams& params, double theta)
    : n_(3 * params.k), theta_(theta), g_(static_cast<std::size_t>(n_ * n_), 0.0) {
  if (!(theta >= 0.0)) throw DomainError("amplification matrix: Theta must be nonnegative");
  const int k = params.k;
  const int n = n_;
  const int top_k = 3 * k - 3;
  std::vector<double> r(static_cast<std::size_t>(3 * n));
  for (int j = 0; j < k; ++j) {
    const BlockParams& b = params.block(j);
    const int lo = 3 * j;
    const int hi = lo + 2;
    // Right-hand sides of the three rows of this block.
    std::fill(r.begin(), r.end(), 0.0);
    double* r0 = r.data();
    double* r1 = r.data() + n;
    double* r2 = r.data() + 2 * n;
    for (int m = lo; m < n; ++m) {
      const double t_lo = inv_factorial(m - lo);
      const double t_mid = m >= lo + 1 ? inv_factorial(m - lo - 1) : 0.0;
      const double t_hi = m >= hi ? inv_factorial(m - hi) : 0.0;
      r0[m] = t_lo - b.beta * t_hi;
      r1[m] = t_mid - b.gamma * t_hi;
      r2[m] = (b.alpha - 1.0) * t_hi;
    }
    for (int m = lo; m <= top_k; ++m) {
      const double w = m == lo ? 1.0 : std::pow(b.alpha_f, m - lo) * inv_factorial(m - lo);
      r2[m] -= theta * w;
    }
    for (int m = 0; m < n; ++m) {
      const double x_hi = r2[m] / b.alpha;
      g_[static_cast<std::size_t>(hi * n + m)] = x_hi;
      g_[static_cast<std::size_t>(lo * n + m)] = r0[m] + b.beta * x_hi;
      g_[static_cast<std::size_t>((lo + 1) * n + m)] = r1[m] + b.gamma * x_hi;
    }
  }
}

Mat3 AmplificationMatrix::block(int j) const { return coupling(j, j); }

Mat3 AmplificationMatrix::coupling(int i, int j) const {
  Mat3 m{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) m[static_cast<std::size_t>(3 * r + c)] = (*this)(3 * i + r, 3 * j + c);
  }
  return m;
}

AmplificationMatrix build_G(const GenAlphaParams& params, double theta) { return {params, theta}; }

Mat3 lambda_block(const BlockParams& p, bool last, double t) {
  const double a = p.alpha, b = p.beta, g = p.gamma;
  Mat3 m;
  if (last) {
    m = {a - b * t, a, a / 2.0 - b,  //
         -g * t,    a, a - g,        //
         -t,        0.0, a - 1.0};
  } else {
    m = {a - b * t, a - b * t, 0.5 * (a - b * (t + 2.0)),  //
         -g * t,    a - g * t, a - 0.5 * g * (t + 2.0),    //
         -t,        -t,        a - 1.0 - 0.5 * t};
  }
  for (double& v : m) v /= a;
  return m;
}

std::vector<double> k2_matrix_a(const GenAlphaParams& params, double) {
  if (params.k != 2) throw UsageError("k2_matrix_a: requires k = 2");
  const auto& p1 = params.block(0);
  const auto& p2 = params.block(1);
  return {1, 0, -p1.beta,  0, 0, 0,         //
          0, 1, -p1.gamma, 0, 0, 0,         //
          0, 0, p1.alpha,  0, 0, 0,         //
          0, 0, 0,         1, 0, -p2.beta,  //
          0, 0, 0,         0, 1, -p2.gamma, //
          0, 0, 0,         0, 0, p2.alpha};
}

std::vector<double> k2_matrix_b(const GenAlphaParams& params, double t) {
  if (params.k != 2) throw UsageError("k2_matrix_b: requires k = 2");
  const double b1 = params.block(0).beta, g1 = params.block(0).gamma, a1 = params.block(0).alpha;
  const double b2 = params.block(1).beta, g2 = params.block(1).gamma, a2 = params.block(1).alpha;
  return {1,  1,  0.5 - b1,           1.0 / 6 - b1,         1.0 / 24 - b1 / 2, 1.0 / 120 - b1 / 6,  //
          0,  1,  1 - g1,             0.5 - g1,             1.0 / 6 - g1 / 2,  1.0 / 24 - g1 / 6,   //
          -t, -t, a1 - 1 - t / 2,     a1 - 1 - t / 6,       (a1 - 1) / 2,      (a1 - 1) / 6,        //
          0,  0,  0,                  1,                    1,                 0.5 - b2,            //
          0,  0,  0,                  0,                    1,                 1 - g2,              //
          0,  0,  0,                  -t,                   0,                 a2 - 1};
}

std::array<double, 4> characteristic_polynomial(const BlockParams& p, bool last, double t) {
  const double a = p.alpha, b = p.beta, g = p.gamma;
  if (last) {
    return {t * (2 * b + 1 - 2 * g) - 2 * a + 2, t * (-4 * b + 2 * g + 1) + 6 * a - 4, 2 * t * b - 6 * a + 2,
            2 * a};
  }
  return {2 * b * t - 2 * a + 2, t * (-4 * b - 2 * g + 1) + 6 * a - 4, t * (2 * b + 2 * g + 1) - 6 * a + 2, 2 * a};
}

std::array<double, 4> characteristic_polynomial(const Mat3& m) {
  const double tr = m[0] + m[4] + m[8];
  const double minors = (m[0] * m[4] - m[1] * m[3]) + (m[0] * m[8] - m[2] * m[6]) + (m[4] * m[8] - m[5] * m[7]);
  const double det = m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
                     m[2] * (m[3] * m[7] - m[4] * m[6]);
  return {-det, minors, -tr, 1.0};
}

double discriminant(const std::array<double, 4>& c) {
  const double a = c[3], b = c[2], cc = c[1], d = c[0];
  return 18 * a * b * cc * d - 4 * b * b * b * d + b * b * cc * cc - 4 * a * cc * cc * cc - 27 * a * a * d * d;
}

std::array<Complex, 3> block_spectrum(const GenAlphaParams& params, int block, double theta) {
  // Diagonal blocks do not depend on the other blocks, so build only this one.
  const AmplificationMatrix g(params, theta);
  return linalg::eigenvalues3(g.block(block));
}

SpectrumSample spectrum(const GenAlphaParams& params, double theta) {
  SpectrumSample s;
  s.theta = theta;
  const AmplificationMatrix g(params, theta);
  for (int j = 0; j < params.k; ++j) {
    const bool last = j == params.k - 1;
    const auto e = linalg::eigenvalues3(g.block(j));
    const auto c = characteristic_polynomial(params.block(j), last, theta);
    for (const Complex& l : e) {
      const Complex val = ((c[3] * l + c[2]) * l + c[1]) * l + c[0];
      const double scale = std::abs(c[3]) * std::pow(std::abs(l), 3) + std::abs(c[2]) * std::norm(l) +
                           std::abs(c[1]) * std::abs(l) + std::abs(c[0]);
      s.max_residual = std::max(s.max_residual, std::abs(val) / std::max(scale, 1e-300));
      s.eigenvalues.push_back(l);
    }
  }
  s.rho = linalg::spectral_radius(s.eigenvalues);
  return s;
}

std::vector<SpectrumSample> spectrum_sweep(const GenAlphaParams& params, const std::vector<double>& thetas) {
  if (!std::is_sorted(thetas.begin(), thetas.end())) throw UsageError("spectrum_sweep: grid must be sorted");
  std::vector<SpectrumSample> out;
  out.reserve(thetas.size());
  for (double t : thetas) out.push_back(spectrum(params, t));
  return out;
}

BifurcationResult find_bifurcation(const GenAlphaParams& params, int block) {
  if (block < 0 || block >= params.k) throw UsageError("find_bifurcation: block out of range");
  BifurcationResult res;
  const bool last = block == params.k - 1;
  const auto& bp = params.block(block);
  res.closed_form = bp.omega_b;
  auto disc = [&](double t) { return discriminant(characteristic_polynomial(AmplificationMatrix(params, t).block(block))); };

  // Golden-section maximisation of a negative local maximum; accepts a
  // touching zero relative to the size of the coefficients.
  auto touch = [&](double centre) -> std::optional<double> {
    double a = centre - kScanStep, b = centre + kScanStep;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = disc(c), fd = disc(d);
    while (b - a > kBisectTol) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - phi * (b - a);
        fc = disc(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + phi * (b - a);
        fd = disc(d);
      }
    }
    const double t = 0.5 * (a + b);
    const auto cp = characteristic_polynomial(AmplificationMatrix(params, t).block(block));
    double scale = 0.0;
    for (double v : cp) scale = std::max(scale, std::abs(v));
    if (std::abs(disc(t)) <= 1e-8 * std::pow(scale, 4)) return t;
    return std::nullopt;
  };

  double prev_t = kScanStep;
  double prev = disc(prev_t);
  // The principal pair starts coalesced at 1 for Theta = 0; skip that touch.
  double before = INFINITY;
  for (double t = 2 * kScanStep; t <= kScanMax + 1e-12; t += kScanStep) {
    const double cur = disc(t);
    if (prev < 0.0 && cur >= 0.0) {
      double lo = prev_t, hi = t;
      while (hi - lo > kBisectTol) {
        const double mid = 0.5 * (lo + hi);
        (disc(mid) < 0.0 ? lo : hi) = mid;
      }
      res.found = true;
      res.theta = 0.5 * (lo + hi);
      break;
    }
    if (prev < 0.0 && prev >= before && prev >= cur) {
      if (const auto z = touch(prev_t)) {
        res.found = true;
        res.theta = *z;
        break;
      }
    }
    before = prev;
    prev = cur;
    prev_t = t;
  }
  if (res.found) {
    const auto e = linalg::eigenvalues3(AmplificationMatrix(params, res.theta).block(block));
    // The coalesced pair: the two eigenvalues closest to each other.
    double gap = INFINITY;
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        if (std::abs(e[i] - e[j]) < gap) {
          gap = std::abs(e[i] - e[j]);
          res.root_magnitude = 0.5 * (std::abs(e[i]) + std::abs(e[j]));
        }
      }
    }
  }
  (void)last;
  return res;
}

StabilityResult find_stability(const GenAlphaParams& params) {
  StabilityResult res;
  for (int j = 0; j < params.k; ++j) {
    auto radius = [&](double t) {
      return linalg::spectral_radius(linalg::eigenvalues3(AmplificationMatrix(params, t).block(j)));
    };
    double good = 0.0;
    double bad = -1.0;
    for (double t = kScanStep; t <= kScanMax + 1e-12; t += kScanStep) {
      if (radius(t) > 1.0 + kRadiusTol) {
        bad = t;
        break;
      }
      good = t;
    }
    double limit = kScanMax;
    if (bad > 0.0) {
      while (bad - good > kBisectTol) {
        const double mid = 0.5 * (good + bad);
        (radius(mid) > 1.0 + kRadiusTol ? bad : good) = mid;
      }
      limit = good;
    }
    res.block_theta_max.push_back(limit);
    const double cf = params.block(j).omega_s;
    res.closed_form.push_back(cf);
    if (std::abs(cf - limit) > 0.01 * limit) {
      char buf[200];
      std::snprintf(buf, sizeof buf,
                    "block %d: closed-form Omega_s = %.10g differs from the numeric limit %.10g by %.3g%%", j + 1, cf,
                    limit, 100.0 * std::abs(cf - limit) / limit);
      res.diagnostics.emplace_back(buf);
    }
  }
  res.theta_max = *std::min_element(res.block_theta_max.begin(), res.block_theta_max.end());
  return res;
}

}  // namespace genalpha::spectral
