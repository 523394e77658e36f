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

#include "aide/baselines.hpp"

#include <doctest.h>

#include <cmath>

#include "aide/bimodal.hpp"
#include "aide/hmm_smc.hpp"
#include "aide/oracle.hpp"
#include "aide/properties.hpp"

using namespace aide;

TEST_CASE("lml_compare with exact-posterior proposals is exact on both sides") {
  const Gaussian1dProblem problem = make_gaussian_1d_problem();
  SmcSpec<double> spec;
  spec.n_particles = 1;
  spec.init = *problem.model.exact_posterior;
  spec.init_target = problem.model.joint_target();
  const InferenceAlgorithm<double> alg = make_smc_algorithm(spec);
  const DiagnosticReport report = lml_compare(alg, alg, 100, 3);
  CHECK(std::abs(report.gold_value - *problem.model.exact_log_marginal) < 1e-9);
  CHECK(std::abs(report.target_value - *problem.model.exact_log_marginal) < 1e-9);
  CHECK(report.gold_se < 1e-9);
  CHECK(report.target_se < 1e-9);
}

TEST_CASE("lml_compare gold mean is consistent with the exact evidence") {
  const DiscreteHmm hmm({0.6, 0.4}, {{0.7, 0.3}, {0.2, 0.8}},
                        {{0.9, 0.1}, {0.3, 0.7}}, 3);
  const SymbolSequence obs{0, 1, 1};
  const double log_evidence = hmm_forward(hmm, obs).log_marginal;
  const InferenceAlgorithm<StateSequence> gold = make_smc_algorithm(
      hmm_smc_spec(hmm, obs, 50, HmmProposal::optimal));
  const InferenceAlgorithm<StateSequence> target = make_smc_algorithm(
      hmm_smc_spec(hmm, obs, 2, HmmProposal::prior));
  const DiagnosticReport report = lml_compare(gold, target, 2000, 5);
  // Jensen gap pushes the mean log estimate below log p(y); with 50
  // optimal-proposal particles it is tiny relative to 3 standard errors.
  CHECK(std::abs(report.gold_value - log_evidence) <= 3.0 * report.gold_se + 1e-3);
  CHECK(report.target_value < report.gold_value);
}

TEST_CASE("lml_compare rejects algorithms without evidence estimates") {
  const Gaussian1dProblem problem = make_gaussian_1d_problem();
  const InferenceAlgorithm<double> empty =
      make_exact_posterior_algorithm(problem.model);
  const InferenceAlgorithm<double> sir =
      make_sir_algorithm(problem.prior, problem.model.joint_target(), 4);
  CHECK_THROWS_AS(lml_compare(empty, sir, 10, 1), UnsupportedAlgorithmError);
  CHECK_THROWS_AS(lml_compare(sir, empty, 10, 1), UnsupportedAlgorithmError);
}

TEST_CASE("probe_expectation of a constant probe has zero error") {
  const Gaussian1dProblem problem = make_gaussian_1d_problem();
  const InferenceAlgorithm<double> alg =
      make_exact_posterior_algorithm(problem.model);
  const auto [value, se] =
      probe_expectation(alg, [](const double&) { return 2.5; }, 100, 7);
  CHECK(value == 2.5);
  CHECK(se == 0.0);
}

TEST_CASE("probe matches the enumerated posterior marginal on the hmm") {
  const DiscreteHmm hmm({0.6, 0.4}, {{0.7, 0.3}, {0.2, 0.8}},
                        {{0.9, 0.1}, {0.3, 0.7}}, 3);
  const SymbolSequence obs{0, 1, 1};
  const auto enumeration = oracle::enumerate_hmm_posterior(hmm, obs);
  double marginal = 0.0;  // P(x_0 = 0 | y)
  for (std::size_t i = 0; i < enumeration.sequences.size(); ++i)
    if (enumeration.sequences[i][0] == 0) marginal += enumeration.posterior[i];

  const Model<StateSequence> posed = make_hmm_model(hmm, obs);
  const InferenceAlgorithm<StateSequence> gold =
      make_exact_posterior_algorithm(posed);
  const auto [value, se] = probe_expectation(
      gold, [](const StateSequence& x) { return x[0] == 0 ? 1.0 : 0.0; },
      20000, 9);
  CHECK(std::abs(value - marginal) <= 3.0 * se);
}

TEST_CASE("sign probe separates mode-missing from mode-covering proposals") {
  BimodalTarget target;
  target.component_means = {-2.0, 2.0};
  target.component_stds = {0.5, 0.5};
  target.component_weights = {0.1, 0.9};
  const Model<double> posed = make_bimodal_model(target);

  // Truth by quadrature over the mixture density.
  const double truth = oracle::quadrature_expectation(
      [](double x) { return x < 0.0 ? -1.0 : 1.0; },
      [&](double x) { return posed.log_joint(x); }, -7.0, 7.0, 4000);

  const ProbeFunction<double> sign_probe = [](const double& x) {
    return x < 0.0 ? -1.0 : 1.0;
  };
  const int particles = 200;
  const auto broad = make_sir_algorithm(gaussian_proposal(0.0, 3.0),
                                        posed.joint_target(), particles);
  const auto offset = make_sir_algorithm(gaussian_proposal(2.0, 0.6),
                                         posed.joint_target(), particles);
  const auto [broad_value, broad_se] =
      probe_expectation(broad, sign_probe, 4000, 11);
  const auto [offset_value, offset_se] =
      probe_expectation(offset, sign_probe, 4000, 11);
  CHECK(std::abs(broad_value - truth) <= 3.0 * broad_se + 0.02);
  CHECK(offset_value - truth > 10.0 * (offset_se + 1e-12));
}

TEST_CASE("probe standard error scales like the square root of n") {
  const Gaussian1dProblem problem = make_gaussian_1d_problem();
  const InferenceAlgorithm<double> alg =
      make_exact_posterior_algorithm(problem.model);
  const ProbeFunction<double> identity = [](const double& x) { return x; };
  const auto [v1, se_small] = probe_expectation(alg, identity, 100, 13);
  const auto [v2, se_large] = probe_expectation(alg, identity, 10000, 13);
  (void)v1;
  (void)v2;
  const double ratio = se_small / se_large;
  CHECK(ratio > 5.0);
  CHECK(ratio < 20.0);
}
