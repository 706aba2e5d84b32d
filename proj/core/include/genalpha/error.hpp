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

#include <stdexcept>
#include <string>

namespace genalpha {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The caller combined arguments that cannot work together (dimension mismatch etc).
class UsageError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Two patches do not share a matching discretization along an interface.
class ConformityError : public GeometryError {
 public:
  ConformityError(int patch_a, int patch_b, const std::string& what)
      : GeometryError("patches " + std::to_string(patch_a) + " and " +
                      std::to_string(patch_b) + ": " + what),
        patch_a_(patch_a),
        patch_b_(patch_b) {}

  int patch_a() const noexcept { return patch_a_; }
  int patch_b() const noexcept { return patch_b_; }

 private:
  int patch_a_;
  int patch_b_;
};

class AssemblyError : public Error {
 public:
  using Error::Error;
};

/// A matrix expected to be symmetric positive definite failed to factor.
class FactorizationError : public Error {
 public:
  using Error::Error;
};

/// An iterative solve did not reach its tolerance. `block` is the scheme block
/// whose mass solve failed, or -1 outside of time stepping.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, int block = -1)
      : Error(what), block_(block) {}
  int block() const noexcept { return block_; }

 private:
  int block_;
};

/// The time integration blew up (or was asked to run above the CFL limit).
class StabilityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace genalpha
