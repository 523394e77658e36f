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

#include "aide/ais.hpp"

#include <doctest.h>

#include <cmath>

#include "aide/properties.hpp"

using namespace aide;

TEST_CASE("single-target annealing is plain importance sampling") {
  const Gaussian1dProblem problem = make_gaussian_1d_problem();
  AisSettings<double> settings;
  settings.init = problem.prior;
  settings.schedule = constant_schedule(problem.model.joint_target(), 1);
  RandomStream rng_a = RandomStream::from_key(2, {0});
  RandomStream rng_b = RandomStream::from_key(2, {0});
  const AisRun<double> run = ais_forward(settings, rng_a);
  const double x = problem.prior.sample(rng_b);
  CHECK(run.output == x);
  CHECK(run.log_ml_estimate ==
        problem.model.log_joint(x) - problem.prior.log_density(x));
}

TEST_CASE("identical targets make the estimate the exact normalizer") {
  // Init draws from the normalized target, every annealing level equal:
  // the weight is the normalizing constant on every run.
  const Gaussian1dProblem problem = make_gaussian_1d_problem();
  const double log_norm = *problem.model.exact_log_marginal;
  AisSettings<double> settings;
  settings.init = *problem.model.exact_posterior;
  settings.schedule = constant_schedule(problem.model.joint_target(), 4);
  for (int s = 0; s < 3; ++s)
    settings.kernels.push_back(make_mh_kernel(
        settings.schedule[s], gaussian_random_walk(0.5)));
  RandomStream rng(3);
  for (int i = 0; i < 50; ++i) {
    const AisRun<double> run = ais_forward(settings, rng);
    CHECK(std::abs(run.log_ml_estimate - log_norm) < 1e-9);
  }
}

TEST_CASE("forward evidence estimate is unbiased on the gaussian chain") {
  const Gaussian1dProblem problem = make_gaussian_1d_problem();
  const AisSettings<double> settings = gaussian_ais_settings(problem, 50, 0.8);
  const double evidence = std::exp(*problem.model.exact_log_marginal);
  const int runs = 100000;
  std::vector<double> estimates(runs);
  for (int i = 0; i < runs; ++i) {
    RandomStream rng = RandomStream::from_key(4, {static_cast<std::uint64_t>(i)});
    estimates[i] = std::exp(ais_forward(settings, rng).log_ml_estimate);
  }
  const double gap = std::abs(mean(estimates) - evidence);
  CHECK(gap <= 3.0 * standard_error(estimates));
}

TEST_CASE("reverse run with a single target is the plain importance weight") {
  const Gaussian1dProblem problem = make_gaussian_1d_problem();
  AisSettings<double> settings;
  settings.init = problem.prior;
  settings.schedule = constant_schedule(problem.model.joint_target(), 1);
  RandomStream rng(5);
  const double x = 0.3;
  const AisRun<double> run = ais_reverse(settings, x, rng);
  CHECK(run.log_ml_estimate ==
        problem.model.log_joint(x) - problem.prior.log_density(x));
}

TEST_CASE("forward and reverse log evidence agree near equilibrium") {
  // With a fine schedule the chain stays close to equilibrium and the
  // forward and reverse estimates nearly coincide in the mean.
  const Gaussian1dProblem problem = make_gaussian_1d_problem();
  const AisSettings<double> settings = gaussian_ais_settings(problem, 200, 0.8);
  const int runs = 2000;
  std::vector<double> forward_log(runs), reverse_log(runs);
  for (int i = 0; i < runs; ++i) {
    RandomStream rng = RandomStream::from_key(6, {static_cast<std::uint64_t>(i)});
    const AisRun<double> fwd = ais_forward(settings, rng);
    forward_log[i] = fwd.log_ml_estimate;
    reverse_log[i] = ais_reverse(settings, fwd.output, rng).log_ml_estimate;
  }
  CHECK(std::abs(mean(forward_log) - mean(reverse_log)) < 0.05);
}

TEST_CASE("evidence recomputes from the stored chain") {
  const Gaussian1dProblem problem = make_gaussian_1d_problem();
  const AisSettings<double> settings = gaussian_ais_settings(problem, 20, 0.8);
  RandomStream rng(7);
  for (int i = 0; i < 50; ++i) {
    const AisRun<double> run = ais_forward(settings, rng);
    CHECK(std::abs(ais_log_ml_from_chain(settings, run.chain) -
                   run.log_ml_estimate) < 1e-9);
    const AisRun<double> rev = ais_reverse(settings, run.output, rng);
    CHECK(std::abs(ais_log_ml_from_chain(settings, rev.chain) -
                   rev.log_ml_estimate) < 1e-9);
  }
}

TEST_CASE("settings validation") {
  const Gaussian1dProblem problem = make_gaussian_1d_problem();
  AisSettings<double> settings = gaussian_ais_settings(problem, 5, 0.8);
  settings.kernels.pop_back();
  CHECK_THROWS_AS(settings.validate(), std::invalid_argument);

  AisSettings<double> not_db = gaussian_ais_settings(problem, 3, 0.8);
  not_db.kernels[0].detailed_balance = false;
  CHECK_THROWS_AS(not_db.validate(), std::invalid_argument);
}

TEST_CASE("seed-paired collapse of single-particle smc onto annealing") {
  const Gaussian1dProblem problem = make_gaussian_1d_problem();
  const AisSettings<double> settings = gaussian_ais_settings(problem, 12, 0.8);
  const SmcSpec<double> spec = smc_spec_from_ais(settings, 1);
  for (int i = 0; i < 100; ++i) {
    RandomStream rng_a = RandomStream::from_key(8, {static_cast<std::uint64_t>(i)});
    RandomStream rng_b = RandomStream::from_key(8, {static_cast<std::uint64_t>(i)});
    const SmcRunResult<double> smc = smc_run(spec, rng_a);
    const AisRun<double> ais = ais_forward(settings, rng_b);
    CHECK(smc.output == ais.output);
    CHECK(smc.log_ml_estimate == ais.log_ml_estimate);

    RandomStream rng_c = RandomStream::from_key(9, {static_cast<std::uint64_t>(i)});
    RandomStream rng_d = RandomStream::from_key(9, {static_cast<std::uint64_t>(i)});
    const SmcRunResult<double> csmc = conditional_smc(spec, ais.output, rng_c);
    const AisRun<double> rev = ais_reverse(settings, ais.output, rng_d);
    CHECK(csmc.log_ml_estimate == rev.log_ml_estimate);
  }
}
