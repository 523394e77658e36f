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

#ifndef AIDE_ALGORITHM_HPP
#define AIDE_ALGORITHM_HPP

#include <functional>
#include <optional>

#include "aide/ais.hpp"
#include "aide/model.hpp"
#include "aide/smc.hpp"

namespace aide {

/// Output of one inference run: the sample, the run's log xi value, and,
/// for algorithms built on evidence estimation, the run's log evidence
/// estimate.
template <typename X>
struct RunOutput {
  X output;
  double log_xi = 0.0;
  std::optional<double> log_ml;
};

/// An inference algorithm paired with its meta-inference sampler.
///
/// `simulate` runs the algorithm, recording the output and the log xi value
/// of the run's own trace. `meta_simulate` runs the meta-inference sampler
/// at a given output and reports that trace's log xi. `log_z` is the
/// constant relating xi to the trace density ratio; it is carried for
/// documentation and cancels inside the divergence estimator.
///
/// Values of this type are immutable and safe to share across threads;
/// every call draws from a caller-provided stream.
template <typename X>
struct InferenceAlgorithm {
  std::function<RunOutput<X>(RandomStream&)> simulate;
  std::function<double(const X&, RandomStream&)> meta_simulate;
  double log_z = 0.0;
};

/// Algorithm with a tractable normalized output density and an empty trace:
/// exact posterior samplers, rejection samplers (modeled through their
/// output density), and variational approximations.
///
/// xi is Z q(x); meta-inference consumes no randomness and is deterministic
/// in x.
template <typename X>
InferenceAlgorithm<X> make_exact_density_algorithm(Distribution<X> sampler,
                                                   double log_z = 0.0) {
  InferenceAlgorithm<X> alg;
  alg.log_z = log_z;
  alg.simulate = [sampler, log_z](RandomStream& rng) {
    RunOutput<X> out;
    out.output = sampler.sample(rng);
    out.log_xi = log_z + sampler.log_density(out.output);
    return out;
  };
  alg.meta_simulate = [sampler, log_z](const X& x, RandomStream&) {
    return log_z + sampler.log_density(x);
  };
  return alg;
}

/// Exact-posterior gold standard for a model with tractable posterior
/// facilities: Z = p(y), so log xi = log p(x, y).
template <typename X>
InferenceAlgorithm<X> make_exact_posterior_algorithm(const Model<X>& model) {
  if (!model.exact_posterior || !model.exact_log_marginal)
    throw UnsupportedAlgorithmError(
        "make_exact_posterior_algorithm: model lacks exact posterior");
  return make_exact_density_algorithm(*model.exact_posterior,
                                      *model.exact_log_marginal);
}

/// SMC as an inference algorithm: simulate runs the sampler, meta-inference
/// is generalized conditional SMC; xi = p(x, y) / evidence estimate.
///
/// meta_simulate at a point with zero joint density returns log xi = -inf
/// directly (xi vanishes with its numerator there), so divergence
/// estimation can surface the incompatibility as an infinite estimate.
template <typename X>
InferenceAlgorithm<X> make_smc_algorithm(SmcSpec<X> spec) {
  spec.validate();
  InferenceAlgorithm<X> alg;
  alg.simulate = [spec](RandomStream& rng) {
    const SmcRunResult<X> run = smc_run(spec, rng);
    RunOutput<X> out;
    out.output = run.output;
    out.log_xi = smc_log_xi(spec, run);
    out.log_ml = run.log_ml_estimate;
    return out;
  };
  alg.meta_simulate = [spec](const X& x, RandomStream& rng) {
    if (spec.final_target().log_density(x) == kNegInf) return kNegInf;
    const SmcRunResult<X> run = conditional_smc(spec, x, rng);
    return smc_log_xi(spec, run);
  };
  return alg;
}

/// Annealed importance sampling as an inference algorithm; meta-inference
/// runs the chain in reverse.
template <typename X>
InferenceAlgorithm<X> make_ais_algorithm(AisSettings<X> settings) {
  settings.validate();
  const int last = settings.schedule.n_steps - 1;
  const UnnormalizedTarget<X> final_target = settings.schedule[last];
  InferenceAlgorithm<X> alg;
  alg.simulate = [settings, final_target](RandomStream& rng) {
    const AisRun<X> run = ais_forward(settings, rng);
    RunOutput<X> out;
    out.output = run.output;
    out.log_xi = final_target.log_density(run.output) - run.log_ml_estimate;
    out.log_ml = run.log_ml_estimate;
    return out;
  };
  alg.meta_simulate = [settings, final_target](const X& x, RandomStream& rng) {
    const double log_joint = final_target.log_density(x);
    if (log_joint == kNegInf) return kNegInf;
    const AisRun<X> run = ais_reverse(settings, x, rng);
    return log_joint - run.log_ml_estimate;
  };
  return alg;
}

/// Markov chain Monte Carlo with a fixed burn-in, expressed as annealing
/// with every intermediate target equal to the joint density. The output is
/// the chain iterate after `burn_in` applications of the kernel.
template <typename X>
InferenceAlgorithm<X> make_mh_algorithm(Distribution<X> init,
                                        MarkovKernel<X> kernel, int burn_in,
                                        const Model<X>& model) {
  if (burn_in < 0)
    throw std::invalid_argument("make_mh_algorithm: burn_in must be >= 0");
  AisSettings<X> settings;
  settings.init = std::move(init);
  settings.schedule = constant_schedule(model.joint_target(), burn_in + 1);
  settings.kernels.assign(burn_in, kernel);
  return make_ais_algorithm(std::move(settings));
}

/// Importance sampling with resampling, written directly from its
/// description: propose P particles, resample one as the output;
/// meta-inference plants the output at a uniform index and proposes the
/// other P - 1 particles afresh.
///
/// The draw sequence matches single-step SMC exactly.
template <typename X>
InferenceAlgorithm<X> make_sir_algorithm(Distribution<X> proposal,
                                         UnnormalizedTarget<X> target, int P) {
  if (P < 1) throw std::invalid_argument("make_sir_algorithm: P must be >= 1");
  InferenceAlgorithm<X> alg;
  alg.simulate = [proposal, target, P](RandomStream& rng) {
    std::vector<X> particles;
    particles.reserve(P);
    for (int i = 0; i < P; ++i) particles.push_back(proposal.sample(rng));
    std::vector<double> log_weights(P);
    for (int i = 0; i < P; ++i)
      log_weights[i] = target.log_density(particles[i]) -
                       proposal.log_density(particles[i]);
    const double lse = log_sum_exp(log_weights);
    if (lse == kNegInf)
      throw DegenerateWeightsError(1, "SIR: all particle weights are zero at step 1");
    const std::vector<double> probs = normalized_probs(log_weights);
    const int idx = rng.categorical(probs);
    RunOutput<X> out;
    out.output = particles[idx];
    const double log_ml = lse - std::log(static_cast<double>(P));
    out.log_xi = target.log_density(out.output) - log_ml;
    out.log_ml = log_ml;
    return out;
  };
  alg.meta_simulate = [proposal, target, P](const X& x, RandomStream& rng) {
    const double log_joint = target.log_density(x);
    if (log_joint == kNegInf) return kNegInf;
    const int planted = rng.uniform_int(P);
    std::vector<X> particles(P, x);
    for (int i = 0; i < P; ++i) {
      if (i != planted) particles[i] = proposal.sample(rng);
    }
    std::vector<double> log_weights(P);
    for (int i = 0; i < P; ++i)
      log_weights[i] = target.log_density(particles[i]) -
                       proposal.log_density(particles[i]);
    const double lse = log_sum_exp(log_weights);
    if (lse == kNegInf)
      throw DegenerateWeightsError(1, "SIR: all particle weights are zero at step 1");
    const double log_ml = lse - std::log(static_cast<double>(P));
    return log_joint - log_ml;
  };
  return alg;
}

}  // namespace aide

#endif  // AIDE_ALGORITHM_HPP
