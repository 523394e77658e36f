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

#ifndef AIDE_PROPERTIES_HPP
#define AIDE_PROPERTIES_HPP

#include <string>
#include <vector>

#include "aide/aide.hpp"
#include "aide/config.hpp"
#include "aide/oracle.hpp"

// The cross-module statistical invariants, runnable as one suite with fixed
// seeds. Each check reports pass/fail with a one-line numeric summary; the
// suite never short-circuits. The instances the checks run on are exposed
// so other test binaries can reuse them.

namespace aide {

struct PropertyResult {
  std::string name;
  bool pass = false;
  std::string details;
};

struct PropertyReport {
  std::vector<PropertyResult> results;

  bool all_pass() const;
  Json to_json() const;
};

/// Runs every check. `inject_xi_log_bias` in the config, when nonzero, adds
/// that bias to the gold-side simulate xi inside the upper-bound and
/// symmetry checks; it exists to demonstrate which checks are sensitive to
/// an inconsistent xi (the upper bound tolerates inflation, the symmetry
/// check does not).
PropertyReport run_property_suite(const PropertySuiteConfig& cfg,
                                  int threads = 1);

/// A two-point-space SMC instance (P = 2, T = 2) with explicit backward
/// kernels, small enough for exhaustive trace enumeration.
struct TinyDiscreteSmc {
  SmcSpec<int> spec;
  std::vector<int> support;
  double log_evidence;             // log sum of the final target
  Distribution<int> posterior;     // normalized final target
};
TinyDiscreteSmc make_tiny_discrete_smc();

/// A 1D Gaussian conjugate problem: prior N(0,1), one observation with unit
/// noise, closed-form posterior and evidence.
struct Gaussian1dProblem {
  Model<double> model;
  Distribution<double> prior;
  double posterior_mean;
  double posterior_var;
};
Gaussian1dProblem make_gaussian_1d_problem(double observation = 1.0);

/// Annealed chain settings for the 1D Gaussian problem.
AisSettings<double> gaussian_ais_settings(const Gaussian1dProblem& problem,
                                          int n_steps, double step_size,
                                          int n_sweeps = 1);

/// Wraps an algorithm so its simulate path reports log xi shifted by
/// `log_bias`; meta-inference is untouched. Test instrumentation.
template <typename X>
InferenceAlgorithm<X> with_simulate_xi_bias(InferenceAlgorithm<X> alg,
                                            double log_bias) {
  const auto inner = alg.simulate;
  alg.simulate = [inner, log_bias](RandomStream& rng) {
    RunOutput<X> out = inner(rng);
    out.log_xi += log_bias;
    return out;
  };
  return alg;
}

}  // namespace aide

#endif  // AIDE_PROPERTIES_HPP
