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

#include "aide/aide.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "aide/bimodal.hpp"
#include "aide/oracle.hpp"
#include "aide/properties.hpp"

using namespace aide;

TEST_CASE("aide config validation") {
  AideConfig cfg;
  cfg.n_gold = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("aide of an algorithm against itself is exactly zero") {
  const InferenceAlgorithm<double> alg =
      make_exact_density_algorithm(gaussian_proposal(0.0, 1.0));
  AideConfig cfg;
  cfg.n_gold = 50;
  cfg.n_target = 50;
  cfg.m_gold = 3;
  cfg.m_target = 2;
  const AideEstimate est = aide::aide(alg, alg, cfg);
  CHECK(est.estimate == 0.0);
  CHECK(est.std_error == 0.0);
}

TEST_CASE("empty-trace gaussians recover the closed-form divergence") {
  const double sigma = 1.0;
  const double delta = 0.7;
  const InferenceAlgorithm<double> gold =
      make_exact_density_algorithm(gaussian_proposal(0.0, sigma));
  const InferenceAlgorithm<double> target =
      make_exact_density_algorithm(gaussian_proposal(delta, sigma));
  AideConfig cfg;
  cfg.n_gold = 10000;
  cfg.n_target = 10000;
  cfg.master_seed = 21;
  const AideEstimate est = aide::aide(gold, target, cfg);
  const double truth = delta * delta / (sigma * sigma);
  CHECK(std::abs(est.estimate - truth) <= 3.0 * est.std_error);
  CHECK(est.std_error > 0.0);
}

TEST_CASE("empty-trace aide equals the simple monte carlo estimator") {
  // With empty traces and M = 1, each term is exactly the log density
  // ratio at the simulated point, i.e. plain Monte Carlo for each KL term.
  const Distribution<double> p = gaussian_proposal(0.0, 1.0);
  const Distribution<double> q = gaussian_proposal(0.4, 0.9);
  const InferenceAlgorithm<double> gold = make_exact_density_algorithm(p);
  const InferenceAlgorithm<double> target = make_exact_density_algorithm(q);
  AideConfig cfg;
  cfg.n_gold = 200;
  cfg.n_target = 300;
  cfg.master_seed = 5;
  const AideEstimate est = aide::aide(gold, target, cfg);

  double manual = 0.0;
  {
    std::vector<double> gold_terms, target_terms;
    for (int n = 0; n < cfg.n_gold; ++n) {
      RandomStream rng =
          RandomStream::from_key(cfg.master_seed, {0, static_cast<std::uint64_t>(n)});
      const double x = p.sample(rng);
      gold_terms.push_back(p.log_density(x) - q.log_density(x));
    }
    for (int n = 0; n < cfg.n_target; ++n) {
      RandomStream rng =
          RandomStream::from_key(cfg.master_seed, {1, static_cast<std::uint64_t>(n)});
      const double x = q.sample(rng);
      target_terms.push_back(q.log_density(x) - p.log_density(x));
    }
    manual = mean(gold_terms) + mean(target_terms);
  }
  CHECK(est.estimate == manual);
}

TEST_CASE("discrete smc target: upper bound and monotonicity in m_target") {
  const TinyDiscreteSmc tiny = make_tiny_discrete_smc();
  const oracle::DiscreteDistribution smc_out =
      oracle::enumerate_smc_output(tiny.spec, tiny.support);
  oracle::DiscreteDistribution posterior;
  posterior.support = tiny.support;
  posterior.probs = {std::exp(tiny.posterior.log_density(0)),
                     std::exp(tiny.posterior.log_density(1))};
  const double truth = oracle::symmetric_kl(smc_out, posterior);
  REQUIRE(truth > 0.0);

  const InferenceAlgorithm<int> gold =
      make_exact_density_algorithm(tiny.posterior, tiny.log_evidence);
  const InferenceAlgorithm<int> target = make_smc_algorithm(tiny.spec);

  const int replications = 4000;
  std::vector<double> at_m1(replications), at_m16(replications);
  for (int r = 0; r < replications; ++r) {
    for (int m : {1, 16}) {
      AideConfig cfg;
      cfg.n_gold = 1;
      cfg.n_target = 1;
      cfg.m_target = m;
      cfg.master_seed = derive_seed(77, {static_cast<std::uint64_t>(r)});
      const double value = aide::aide(gold, target, cfg).estimate;
      (m == 1 ? at_m1 : at_m16)[r] = value;
    }
  }
  const double mean_m1 = mean(at_m1);
  const double se_m1 = standard_error(at_m1);
  CHECK(mean_m1 >= truth - 3.0 * se_m1);

  std::vector<double> diffs(replications);
  for (int r = 0; r < replications; ++r) diffs[r] = at_m1[r] - at_m16[r];
  CHECK(mean(diffs) >= -3.0 * standard_error(diffs));
}

TEST_CASE("mh target over-estimates the enumerated divergence, less so as "
          "m_target grows") {
  // Five-point posterior, burn-in too short to converge from a point-mass
  // start; the true divergence of the chain law comes from matrix powers.
  const std::vector<double> target_probs{0.35, 0.05, 0.3, 0.1, 0.2};
  UnnormalizedTarget<int> target{[target_probs](const int& x) {
    return x >= 0 && x < 5 ? std::log(target_probs[x]) : kNegInf;
  }};
  std::vector<std::vector<double>> proposal_rows(5, std::vector<double>(5, 0.0));
  for (int i = 0; i < 5; ++i) {
    if (i > 0) proposal_rows[i][i - 1] = 0.5;
    if (i < 4) proposal_rows[i][i + 1] = 0.5;
    if (i == 0 || i == 4) proposal_rows[i][i] = 0.5;
  }
  MarkovKernel<int> proposal;
  proposal.sample = [proposal_rows](const int& x, RandomStream& rng) {
    return rng.categorical(proposal_rows[x]);
  };
  // Full-support start concentrated away from the posterior shape, so the
  // chain is far from converged after a short burn-in.
  const std::vector<double> init_probs{0.6, 0.1, 0.1, 0.1, 0.1};
  Distribution<int> init;
  init.sample = [init_probs](RandomStream& rng) {
    return rng.categorical(init_probs);
  };
  init.log_density = [init_probs](const int& x) {
    return x >= 0 && x < 5 ? std::log(init_probs[x]) : kNegInf;
  };

  Model<int> model;
  model.log_joint = target.log_density;
  const int burn_in = 3;
  const InferenceAlgorithm<int> mh = make_mh_algorithm(
      init, make_mh_kernel(target, proposal), burn_in, model);

  Distribution<int> posterior;
  posterior.sample = [target_probs](RandomStream& rng) {
    return rng.categorical(target_probs);
  };
  posterior.log_density = [target_probs](const int& x) {
    return std::log(target_probs[x]);
  };
  const InferenceAlgorithm<int> gold = make_exact_density_algorithm(posterior);

  // Truth: chain law after burn_in steps vs the posterior.
  const auto chain_law = oracle::chain_distribution(
      init_probs, oracle::mh_transition_matrix(target_probs, proposal_rows),
      burn_in);
  oracle::DiscreteDistribution law{{0, 1, 2, 3, 4}, chain_law};
  oracle::DiscreteDistribution post{{0, 1, 2, 3, 4}, target_probs};
  const double truth = oracle::symmetric_kl(law, post);
  REQUIRE(truth > 0.0);

  double previous_mean = kPosInf;
  for (int m : {1, 100}) {
    AideConfig cfg;
    cfg.n_gold = 4000;
    cfg.n_target = 4000;
    cfg.m_target = m;
    cfg.master_seed = 33;
    const AideEstimate est = aide::aide(gold, mh, cfg);
    CHECK(est.estimate >= truth - 3.0 * est.std_error);
    CHECK(est.estimate <= previous_mean + 3.0 * est.std_error);
    previous_mean = est.estimate;
  }
}

TEST_CASE("infinite estimates are signalled with the offending run") {
  // Target with support disjoint from half the gold mass.
  BimodalTarget bimodal;
  bimodal.component_means = {-2.0, 2.0};
  bimodal.component_stds = {0.2, 0.2};
  bimodal.component_weights = {0.5, 0.5};
  const Model<double> posed = make_bimodal_model(bimodal);
  Distribution<double> half;
  half.sample = [](RandomStream& rng) { return 2.0 + 0.2 * rng.normal(); };
  half.log_density = [](const double& x) {
    if (x < 0.0) return kNegInf;  // no mass on the left mode
    const double z = (x - 2.0) / 0.2;
    return -0.5 * z * z - std::log(0.2) - 0.5 * std::log(2.0 * std::numbers::pi);
  };
  const InferenceAlgorithm<double> gold = make_exact_posterior_algorithm(posed);
  const InferenceAlgorithm<double> target = make_exact_density_algorithm(half);
  AideConfig cfg;
  cfg.n_gold = 64;
  cfg.n_target = 64;
  cfg.master_seed = 3;
  const AideEstimate est = aide::aide(gold, target, cfg);
  CHECK_FALSE(est.is_finite());
  CHECK(est.estimate == kPosInf);
  CHECK_FALSE(est.infinite_gold_runs.empty());
  CHECK(est.infinite_target_runs.empty());
}

TEST_CASE("specialized annealing-vs-variational estimator matches generic aide") {
  const Gaussian1dProblem problem = make_gaussian_1d_problem();
  const AisSettings<double> settings = gaussian_ais_settings(problem, 10, 0.8);
  const Distribution<double> q_theta = gaussian_proposal(0.4, 0.8);

  const AideEstimate specialized =
      aide_ais_vs_variational(settings, q_theta, 40, 60, 13);

  const InferenceAlgorithm<double> gold = make_ais_algorithm(settings);
  const InferenceAlgorithm<double> target = make_exact_density_algorithm(q_theta);
  AideConfig cfg;
  cfg.n_gold = 40;
  cfg.n_target = 60;
  cfg.master_seed = 13;
  const AideEstimate generic = aide::aide(gold, target, cfg);

  CHECK(specialized.estimate == generic.estimate);
  CHECK(specialized.std_error == generic.std_error);
  for (std::size_t i = 0; i < specialized.gold_terms.size(); ++i)
    CHECK(specialized.gold_terms[i] == generic.gold_terms[i]);
  for (std::size_t i = 0; i < specialized.target_terms.size(); ++i)
    CHECK(specialized.target_terms[i] == generic.target_terms[i]);
}

TEST_CASE("exact variational family and exact proposal give zero divergence") {
  const Gaussian1dProblem problem = make_gaussian_1d_problem();
  AisSettings<double> settings;
  settings.init = *problem.model.exact_posterior;
  settings.schedule = constant_schedule(problem.model.joint_target(), 1);
  const Distribution<double> q_theta = *problem.model.exact_posterior;
  const AideEstimate est = aide_ais_vs_variational(settings, q_theta, 50, 50, 7);
  CHECK(std::abs(est.estimate) < 1e-9);
}

TEST_CASE("annealing-vs-variational bias shrinks with schedule length") {
  const Gaussian1dProblem problem = make_gaussian_1d_problem();
  // Variational approximation offset from the posterior.
  const double q_mean = problem.posterior_mean + 0.4;
  const double q_var = problem.posterior_var;
  const Distribution<double> q_theta =
      gaussian_proposal(q_mean, std::sqrt(q_var));
  const double truth = oracle::gaussian_symmetric_kl(
      problem.posterior_mean, problem.posterior_var, q_mean, q_var);

  // The estimate upper-bounds the analytic divergence; the excess is the
  // meta-inference error of the chain, which shrinks as the schedule is
  // refined.
  std::vector<double> excess;
  for (int schedule_len : {5, 20, 200}) {
    const AisSettings<double> settings =
        gaussian_ais_settings(problem, schedule_len, 0.8, 2);
    const AideEstimate est =
        aide_ais_vs_variational(settings, q_theta, 4000, 4000, 19);
    CHECK(est.estimate >= truth - 3.0 * est.std_error);
    if (!excess.empty())
      CHECK(est.estimate - truth <= excess.back() + 3.0 * est.std_error);
    excess.push_back(est.estimate - truth);
  }
  CHECK(excess.back() <= 0.5 * excess[1]);
  CHECK(excess.back() <= 0.1);
}

TEST_CASE("estimate serializes to csv") {
  const InferenceAlgorithm<double> alg =
      make_exact_density_algorithm(gaussian_proposal(0.0, 1.0));
  AideConfig cfg;
  cfg.n_gold = 4;
  cfg.n_target = 4;
  cfg.master_seed = 11;
  const AideEstimate est = aide::aide(alg, alg, cfg);
  CHECK(est.csv_header() ==
        "estimate,std_error,n_gold,n_target,m_gold,m_target,seed");
  CHECK(est.csv_row() == "0,0,4,4,1,1,11");
}
