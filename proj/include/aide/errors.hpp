// Copyright 2026 The aide-cpp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AIDE_ERRORS_HPP
#define AIDE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace aide {

/// Raised when every particle weight at one SMC/AIS step is zero.
class DegenerateWeightsError : public std::runtime_error {
 public:
  DegenerateWeightsError(int step, const std::string& what)
      : std::runtime_error(what), step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

/// Raised when an operation is started from a state it cannot handle,
/// e.g. a Metropolis-Hastings step from a zero-density point.
class InvalidStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a linear-algebra step fails (non-SPD matrix, etc.).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an algorithm lacks a capability a diagnostic needs,
/// e.g. asking for marginal-likelihood estimates from a density sampler.
class UnsupportedAlgorithmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an exhaustive enumeration would exceed its term budget.
class EnumerationBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration validation failure; `path` addresses the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace aide

#endif  // AIDE_ERRORS_HPP
