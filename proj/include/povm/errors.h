// Copyright 2026 The povm-purify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POVM_ERRORS_H
#define POVM_ERRORS_H

#include <stdexcept>
#include <string>

namespace povm {

/// Input outside the domain of an operation (type invariant violated).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// The input carries no information about the parameter (e.g. beta = 1/2).
struct DegenerateError : DomainError {
  using DomainError::DomainError;
};

/// A configured parameter failed validation. Carries the parameter name.
struct ValidationError : std::invalid_argument {
  ValidationError(std::string param, const std::string &what)
      : std::invalid_argument("parameter '" + param + "': " + what), param(std::move(param)) {}
  std::string param;
};

/// Requested work exceeds a resource bound (enumeration size, cutoff, grid).
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fisher scoring did not reach the tolerance within max_iter steps.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace povm

#endif
