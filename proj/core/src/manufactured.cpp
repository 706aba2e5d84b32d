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

#include "genalpha/manufactured.hpp"

#include <cmath>
#include <numbers>

#include "genalpha/error.hpp"

namespace genalpha::manufactured {

using std::numbers::pi;

double Temporal::derivative(int n, double t) const {
  // d^n/dt^n cos(ct) = c^n cos(ct + n pi/2), likewise for sin.
  const double cn = std::pow(c, n);
  const double ph = c * t + 0.5 * pi * (n % 4);
  double v = cn * (a * std::cos(ph) + b * std::sin(ph));
  if (n == 0) v += q0 + q1 * t;
  if (n == 1) v += q1;
  return v;
}

double ManufacturedSolution::value(const geometry::Point& x, double t, int n) const {
  double s = 0.0;
  for (const auto& term : terms) s += term.space.value(x) * term.time.derivative(n, t);
  return s;
}

double ManufacturedSolution::forcing(const geometry::Point& x, double t, double a0, double a1) const {
  double f = 0.0;
  const double w2 = omega * omega;
  for (const auto& term : terms) {
    const double s = term.space.value(x);
    const double ls = -w2 * term.space.laplacian(x);
    const auto& T = term.time;
    f += s * T.derivative(2, t) + (a0 * s + a1 * ls) * T.derivative(1, t) + ls * T(t);
  }
  return f;
}

namespace {

SpatialField sine_product(int dim, double k) {
  SpatialField f;
  f.value = [dim, k](const geometry::Point& x) {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v *= std::sin(k * x[i]);
    return v;
  };
  f.laplacian = [dim, k](const geometry::Point& x) {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v *= std::sin(k * x[i]);
    return -dim * k * k * v;
  };
  return f;
}

}  // namespace

ManufacturedSolution standing_wave(int dim, double omega) {
  const double k = 10.0 * pi;
  const double c = k * std::sqrt(static_cast<double>(dim)) * omega;
  return {"standing-wave", omega, {{sine_product(dim, k), {1.0, 1.0, c}}}};
}

ManufacturedSolution dispersion_mode(int j) {
  if (j < 1) throw DomainError("dispersion_mode: j must be positive");
  return {"dispersion-" + std::to_string(j), 1.0 / j, {{sine_product(1, j * pi), {1.0, 0.0, pi}}}};
}

ManufacturedSolution smooth_sine(int dim, double omega) {
  return {"smooth-sine", omega, {{sine_product(dim, 1.0), {1.0, 1.0, 20.0 * pi}}}};
}

ManufacturedSolution linear(int dim, double omega) {
  SpatialField f;
  f.value = [dim](const geometry::Point& x) {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v += (i + 1) * x[i];
    return v;
  };
  f.laplacian = [](const geometry::Point&) { return 0.0; };
  Temporal t;
  t.q0 = 1.0;
  t.q1 = 0.5;
  return {"linear", omega, {{f, t}}};
}

ManufacturedSolution by_name(const std::string& name, int dim, double omega) {
  if (name == "standing-wave") return standing_wave(dim, omega);
  if (name == "smooth-sine") return smooth_sine(dim, omega);
  if (name == "linear") return linear(dim, omega);
  const std::string prefix = "dispersion-";
  if (name.rfind(prefix, 0) == 0 && dim == 1) {
    try {
      return dispersion_mode(std::stoi(name.substr(prefix.size())));
    } catch (const std::exception&) {
    }
  }
  throw ConfigError("unknown manufactured solution '" + name + "'");
}

}  // namespace genalpha::manufactured
