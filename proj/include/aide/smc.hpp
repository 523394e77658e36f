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

#ifndef AIDE_SMC_HPP
#define AIDE_SMC_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aide/errors.hpp"
#include "aide/kernels.hpp"
#include "aide/numeric.hpp"
#include "aide/random.hpp"

namespace aide {

/// Complete record of one SMC run's internal randomness: all particle
/// values, all ancestor indices, and the output particle index. Per-step
/// log weights are cached alongside; they are a deterministic function of
/// the particles and ancestors.
template <typename X>
struct Trace {
  std::vector<std::vector<X>> particles;       // [t][i], t = 0..T-1
  std::vector<std::vector<int>> ancestors;     // [t][i], t = 0..T-2
  int output_index = 0;                        // I_T
  std::vector<std::vector<double>> log_weights;  // [t][i]
};

/// One propagation step: the step's unnormalized target, the forward
/// proposal kernel, and an optional backward kernel.
///
/// When `backward` is absent the forward kernel must be flagged
/// detailed_balance (with respect to the previous step's target); the
/// kernel is then its own reversal and the incremental weight reduces to
/// target_t(x_t) / target_{t-1}(x_t), which is how annealed and MCMC-style
/// moves avoid evaluating kernel densities.
template <typename X>
struct SmcStep {
  UnnormalizedTarget<X> target;
  MarkovKernel<X> forward;
  std::optional<MarkovKernel<X>> backward;
};

/// Parameters of the SMC sampler: particle count, initialization kernel
/// with its target, and the later steps. T = 1 + steps.size().
template <typename X>
struct SmcSpec {
  int n_particles = 1;
  Distribution<X> init;                // k_1, normalized, density evaluable
  UnnormalizedTarget<X> init_target;   // p~_1
  std::vector<SmcStep<X>> steps;       // t = 2..T

  int n_steps() const { return 1 + static_cast<int>(steps.size()); }

  const UnnormalizedTarget<X>& final_target() const {
    return steps.empty() ? init_target : steps.back().target;
  }

  const UnnormalizedTarget<X>& target_before_step(std::size_t s) const {
    return s == 0 ? init_target : steps[s - 1].target;
  }

  void validate() const {
    if (n_particles < 1)
      throw std::invalid_argument("SmcSpec: n_particles must be >= 1");
    if (!init.sample || !init.log_density)
      throw std::invalid_argument("SmcSpec: init kernel needs sample and density");
    for (std::size_t s = 0; s < steps.size(); ++s) {
      const SmcStep<X>& step = steps[s];
      if (!step.forward.sample)
        throw std::invalid_argument("SmcSpec: step " + std::to_string(s + 2) +
                                    " has no forward sampler");
      if (step.backward) {
        if (!step.forward.log_density || !step.backward->log_density)
          throw std::invalid_argument(
              "SmcSpec: step " + std::to_string(s + 2) +
              " with explicit backward kernel needs both kernel densities");
      } else if (!step.forward.detailed_balance) {
        throw std::invalid_argument(
            "SmcSpec: step " + std::to_string(s + 2) +
            " omits the backward kernel but is not flagged detailed-balance");
      }
    }
  }
};

/// Result of a (conditional or unconditional) SMC run.
template <typename X>
struct SmcRunResult {
  X output;
  Trace<X> trace;
  double log_ml_estimate = 0.0;  // log of the evidence estimate
};

namespace detail {

template <typename X>
double smc_initial_log_weight(const SmcSpec<X>& spec, const X& value) {
  return spec.init_target.log_density(value) - spec.init.log_density(value);
}

template <typename X>
double smc_incremental_log_weight(const SmcSpec<X>& spec, std::size_t s,
                                  const X& parent, const X& value) {
  const SmcStep<X>& step = spec.steps[s];
  if (step.backward) {
    return step.target.log_density(value) +
           step.backward->log_density(parent, value) -
           spec.target_before_step(s).log_density(parent) -
           step.forward.log_density(value, parent);
  }
  const double numer = step.target.log_density(value);
  const double denom = spec.target_before_step(s).log_density(value);
  if (numer == kNegInf) return kNegInf;
  return numer - denom;
}

inline double checked_step_lse(std::span<const double> log_weights, int step_t) {
  const double lse = log_sum_exp(log_weights);
  if (lse == kNegInf)
    throw DegenerateWeightsError(
        step_t, "SMC: all particle weights are zero at step " +
                    std::to_string(step_t));
  return lse;
}

}  // namespace detail

/// Runs the SMC sampler: P particles through T steps with multinomial
/// resampling at every step, then one categorical draw of the output
/// particle.
///
/// Draw order (the seed-pairing contract): init draws for particles
/// 1..P; then per step, per particle, one ancestor categorical followed by
/// one kernel draw; finally the output-index categorical. Single-category
/// draws consume no randomness, so the P = 1 run consumes exactly the draw
/// sequence of the corresponding annealed chain.
template <typename X>
SmcRunResult<X> smc_run(const SmcSpec<X>& spec, RandomStream& rng) {
  spec.validate();
  const int P = spec.n_particles;
  const int T = spec.n_steps();

  SmcRunResult<X> result;
  Trace<X>& trace = result.trace;
  trace.particles.resize(T);
  trace.ancestors.resize(T - 1);
  trace.log_weights.assign(T, std::vector<double>(P, 0.0));

  trace.particles[0].reserve(P);
  for (int i = 0; i < P; ++i)
    trace.particles[0].push_back(spec.init.sample(rng));
  for (int i = 0; i < P; ++i)
    trace.log_weights[0][i] =
        detail::smc_initial_log_weight(spec, trace.particles[0][i]);

  double log_ml = 0.0;
  std::vector<double> probs;
  for (std::size_t s = 0; s < spec.steps.size(); ++s) {
    const double lse = detail::checked_step_lse(trace.log_weights[s],
                                                static_cast<int>(s) + 1);
    log_ml += lse - std::log(static_cast<double>(P));
    probs = normalized_probs(trace.log_weights[s]);
    trace.ancestors[s].resize(P);
    trace.particles[s + 1].reserve(P);
    for (int i = 0; i < P; ++i) {
      const int a = rng.categorical(probs);
      trace.ancestors[s][i] = a;
      trace.particles[s + 1].push_back(
          spec.steps[s].forward.sample(trace.particles[s][a], rng));
      trace.log_weights[s + 1][i] = detail::smc_incremental_log_weight(
          spec, s, trace.particles[s][a], trace.particles[s + 1][i]);
    }
  }

  const double final_lse =
      detail::checked_step_lse(trace.log_weights[T - 1], T);
  log_ml += final_lse - std::log(static_cast<double>(P));
  probs = normalized_probs(trace.log_weights[T - 1]);
  trace.output_index = rng.categorical(probs);
  result.output = trace.particles[T - 1][trace.output_index];
  result.log_ml_estimate = log_ml;
  return result;
}

/// Generalized conditional SMC: the canonical meta-inference sampler.
/// Builds an ancestral trajectory ending in `x` by drawing uniform indices
/// and walking the backward kernels, then fills in the remaining particles
/// with a conditional SMC update. The returned trace has `x` as its output.
///
/// Draw order: uniform index for the final step, then per earlier step one
/// uniform index and one backward-kernel draw; then init draws for the
/// non-clamped first-step particles in ascending particle order; then per
/// step, per non-clamped particle, ancestor categorical and kernel draw.
template <typename X>
SmcRunResult<X> conditional_smc(const SmcSpec<X>& spec, const X& x,
                                RandomStream& rng) {
  spec.validate();
  if (spec.final_target().log_density(x) == kNegInf)
    throw std::invalid_argument(
        "conditional_smc: input has zero density under the final target");
  const int P = spec.n_particles;
  const int T = spec.n_steps();

  SmcRunResult<X> result;
  Trace<X>& trace = result.trace;
  trace.particles.assign(T, std::vector<X>());
  for (int t = 0; t < T; ++t) trace.particles[t].resize(P);
  trace.ancestors.assign(T - 1, std::vector<int>(P, 0));
  trace.log_weights.assign(T, std::vector<double>(P, 0.0));

  // Ancestral trajectory, sampled backwards from x.
  std::vector<int> clamped(T);
  clamped[T - 1] = rng.uniform_int(P);
  trace.particles[T - 1][clamped[T - 1]] = x;
  for (int t = T - 2; t >= 0; --t) {
    clamped[t] = rng.uniform_int(P);
    const MarkovKernel<X>& backward = spec.steps[t].backward
                                          ? *spec.steps[t].backward
                                          : spec.steps[t].forward;
    trace.particles[t][clamped[t]] =
        backward.sample(trace.particles[t + 1][clamped[t + 1]], rng);
  }

  // Conditional SMC update around the trajectory.
  for (int i = 0; i < P; ++i) {
    if (i != clamped[0]) trace.particles[0][i] = spec.init.sample(rng);
    trace.log_weights[0][i] =
        detail::smc_initial_log_weight(spec, trace.particles[0][i]);
  }

  double log_ml = 0.0;
  std::vector<double> probs;
  for (std::size_t s = 0; s < spec.steps.size(); ++s) {
    const double lse = detail::checked_step_lse(trace.log_weights[s],
                                                static_cast<int>(s) + 1);
    log_ml += lse - std::log(static_cast<double>(P));
    probs = normalized_probs(trace.log_weights[s]);
    const int t = static_cast<int>(s) + 1;
    for (int i = 0; i < P; ++i) {
      if (i == clamped[t]) {
        trace.ancestors[s][i] = clamped[t - 1];
      } else {
        const int a = rng.categorical(probs);
        trace.ancestors[s][i] = a;
        trace.particles[t][i] =
            spec.steps[s].forward.sample(trace.particles[s][a], rng);
      }
      trace.log_weights[t][i] = detail::smc_incremental_log_weight(
          spec, s, trace.particles[s][trace.ancestors[s][i]],
          trace.particles[t][i]);
    }
  }

  const double final_lse =
      detail::checked_step_lse(trace.log_weights[T - 1], T);
  log_ml += final_lse - std::log(static_cast<double>(P));
  trace.output_index = clamped[T - 1];
  result.output = x;
  result.log_ml_estimate = log_ml;
  return result;
}

/// log xi(u, x) = log p(x, y) - log of the evidence estimate, the only
/// quantity the divergence estimator needs from a run.
template <typename X>
double smc_log_xi(const SmcSpec<X>& spec, const SmcRunResult<X>& result) {
  return spec.final_target().log_density(result.output) -
         result.log_ml_estimate;
}

/// Recomputes every log weight of a trace from its particles and ancestors.
/// Exists so consistency of cached weights is checkable.
template <typename X>
std::vector<std::vector<double>> recompute_log_weights(const SmcSpec<X>& spec,
                                                       const Trace<X>& trace) {
  const int P = spec.n_particles;
  std::vector<std::vector<double>> out(spec.n_steps(),
                                       std::vector<double>(P, 0.0));
  for (int i = 0; i < P; ++i)
    out[0][i] = detail::smc_initial_log_weight(spec, trace.particles[0][i]);
  for (std::size_t s = 0; s < spec.steps.size(); ++s) {
    for (int i = 0; i < P; ++i) {
      const int a = trace.ancestors[s][i];
      out[s + 1][i] = detail::smc_incremental_log_weight(
          spec, s, trace.particles[s][a], trace.particles[s + 1][i]);
    }
  }
  return out;
}

/// Evidence estimate recomputed from a trace's weights.
template <typename X>
double log_ml_from_trace(const SmcSpec<X>& spec, const Trace<X>& trace) {
  const auto log_weights = recompute_log_weights(spec, trace);
  double log_ml = 0.0;
  for (const auto& row : log_weights)
    log_ml += log_sum_exp(row) - std::log(static_cast<double>(spec.n_particles));
  return log_ml;
}

}  // namespace aide

#endif  // AIDE_SMC_HPP
