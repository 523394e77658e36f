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

#ifndef AIDE_AIS_HPP
#define AIDE_AIS_HPP

#include <vector>

#include "aide/errors.hpp"
#include "aide/kernels.hpp"
#include "aide/smc.hpp"

namespace aide {

/// An annealed chain: initialization kernel, target sequence, and one
/// detailed-balance move kernel per bridge (kernel s moves under target s).
template <typename X>
struct AisSettings {
  Distribution<X> init;
  AnnealingSchedule<X> schedule;
  std::vector<MarkovKernel<X>> kernels;  // size schedule.n_steps - 1

  void validate() const {
    if (schedule.n_steps < 1)
      throw std::invalid_argument("AisSettings: schedule must have >= 1 step");
    if (static_cast<int>(kernels.size()) != schedule.n_steps - 1)
      throw std::invalid_argument(
          "AisSettings: need exactly n_steps - 1 move kernels");
    for (const auto& kernel : kernels) {
      if (!kernel.detailed_balance)
        throw std::invalid_argument(
            "AisSettings: move kernels must be detailed-balance operators");
    }
  }
};

/// One annealed run: the chain states, the final state, and the evidence
/// estimate accumulated along the chain.
template <typename X>
struct AisRun {
  X output;
  std::vector<X> chain;  // x_1 ... x_T
  double log_ml_estimate = 0.0;
};

/// Evidence estimate recomputed from a stored chain; the chain plays the
/// role the particle trace plays for SMC.
template <typename X>
double ais_log_ml_from_chain(const AisSettings<X>& settings,
                             const std::vector<X>& chain) {
  double log_ml = settings.schedule[0].log_density(chain[0]) -
                  settings.init.log_density(chain[0]);
  for (int s = 0; s + 1 < settings.schedule.n_steps; ++s) {
    log_ml += settings.schedule[s + 1].log_density(chain[s + 1]) -
              settings.schedule[s].log_density(chain[s + 1]);
  }
  return log_ml;
}

/// Forward annealed run. Draw order: one init draw, then the move kernels
/// in ascending order -- identical to single-particle smc_run on the same
/// settings.
template <typename X>
AisRun<X> ais_forward(const AisSettings<X>& settings, RandomStream& rng) {
  settings.validate();
  const int T = settings.schedule.n_steps;
  AisRun<X> run;
  run.chain.reserve(T);
  run.chain.push_back(settings.init.sample(rng));
  double log_ml = settings.schedule[0].log_density(run.chain[0]) -
                  settings.init.log_density(run.chain[0]);
  if (log_ml == kNegInf)
    throw DegenerateWeightsError(1, "AIS: zero weight at step 1");
  for (int s = 0; s + 1 < T; ++s) {
    run.chain.push_back(settings.kernels[s].sample(run.chain[s], rng));
    const double numer = settings.schedule[s + 1].log_density(run.chain[s + 1]);
    if (numer == kNegInf)
      throw DegenerateWeightsError(s + 2, "AIS: zero weight at step " +
                                              std::to_string(s + 2));
    log_ml += numer - settings.schedule[s].log_density(run.chain[s + 1]);
  }
  run.output = run.chain.back();
  run.log_ml_estimate = log_ml;
  return run;
}

/// Reverse annealed run from a given final state: the move kernels are
/// applied in descending order (each is its own reversal), then the same
/// evidence estimate is read off the reversed chain. Draw order matches
/// single-particle conditional_smc.
template <typename X>
AisRun<X> ais_reverse(const AisSettings<X>& settings, const X& x,
                      RandomStream& rng) {
  settings.validate();
  const int T = settings.schedule.n_steps;
  if (settings.schedule[T - 1].log_density(x) == kNegInf)
    throw std::invalid_argument(
        "ais_reverse: input has zero density under the final target");
  AisRun<X> run;
  run.chain.assign(T, x);
  for (int s = T - 2; s >= 0; --s)
    run.chain[s] = settings.kernels[s].sample(run.chain[s + 1], rng);
  const double w1 = settings.schedule[0].log_density(run.chain[0]) -
                    settings.init.log_density(run.chain[0]);
  if (w1 == kNegInf)
    throw DegenerateWeightsError(1, "AIS: zero weight at step 1");
  double log_ml = w1;
  for (int s = 0; s + 1 < T; ++s) {
    const double numer = settings.schedule[s + 1].log_density(run.chain[s + 1]);
    if (numer == kNegInf)
      throw DegenerateWeightsError(s + 2, "AIS: zero weight at step " +
                                              std::to_string(s + 2));
    log_ml += numer - settings.schedule[s].log_density(run.chain[s + 1]);
  }
  run.output = x;
  run.log_ml_estimate = log_ml;
  return run;
}

/// The same annealed chain expressed as a single-particle SMC spec, used
/// when composing with the generic SMC machinery and in equivalence tests.
template <typename X>
SmcSpec<X> smc_spec_from_ais(const AisSettings<X>& settings, int n_particles) {
  settings.validate();
  SmcSpec<X> spec;
  spec.n_particles = n_particles;
  spec.init = settings.init;
  spec.init_target = settings.schedule[0];
  spec.steps.reserve(settings.kernels.size());
  for (int s = 0; s + 1 < settings.schedule.n_steps; ++s) {
    SmcStep<X> step;
    step.target = settings.schedule[s + 1];
    step.forward = settings.kernels[s];
    step.backward = std::nullopt;
    spec.steps.push_back(std::move(step));
  }
  return spec;
}

}  // namespace aide

#endif  // AIDE_AIS_HPP
