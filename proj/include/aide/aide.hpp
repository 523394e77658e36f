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

#ifndef AIDE_AIDE_HPP
#define AIDE_AIDE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "aide/algorithm.hpp"
#include "aide/numeric.hpp"
#include "aide/parallel.hpp"
#include "aide/random.hpp"

namespace aide {

/// Replication counts and master seed for the divergence estimator.
struct AideConfig {
  int n_gold = 100;
  int n_target = 100;
  int m_gold = 1;
  int m_target = 1;
  std::uint64_t master_seed = 0;

  void validate() const;
};

/// The divergence estimate: the point estimate in nats, its standard error,
/// and the per-run log-ratio terms the estimate averages. Infinite terms
/// (a zero xi group mean, i.e. one algorithm cannot explain the other's
/// output) are kept and reported rather than collapsed to NaN; the runs
/// responsible are listed by index.
struct AideEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::vector<double> gold_terms;
  std::vector<double> target_terms;
  std::vector<int> infinite_gold_runs;
  std::vector<int> infinite_target_runs;
  AideConfig config;

  bool is_finite() const;
  std::string csv_header() const;
  std::string csv_row() const;
};

namespace detail {

inline std::uint64_t kGoldSide = 0;
inline std::uint64_t kTargetSide = 1;

void finalize_estimate(AideEstimate& est);

}  // namespace detail

/// The auxiliary inference divergence estimator.
///
/// For each of n_gold gold runs: one simulate call provides the output x_n
/// and the m = 1 gold xi value; m_gold - 1 further gold meta-inference runs
/// and m_target target meta-inference runs are taken at x_n. Symmetrically
/// for n_target target runs. The estimate is
///
///   mean_n log( mean_m xi_gold / mean_m xi_target )    (gold runs)
/// + mean_n log( mean_m xi_target / mean_m xi_gold )    (target runs)
///
/// with each inner mean computed by log-mean-exp. In expectation this upper
/// bounds the symmetrized KL divergence between the two output
/// distributions, and the bound tightens as m_gold / m_target grow.
///
/// Run n of each side draws from the stream (master_seed, side, n), so the
/// estimate is bit-identical across thread counts.
template <typename X>
AideEstimate aide(const InferenceAlgorithm<X>& gold,
                  const InferenceAlgorithm<X>& target, const AideConfig& cfg,
                  int threads = 1) {
  cfg.validate();
  AideEstimate est;
  est.config = cfg;
  est.gold_terms.assign(cfg.n_gold, 0.0);
  est.target_terms.assign(cfg.n_target, 0.0);

  run_indexed(cfg.n_gold, threads, [&](int n) {
    RandomStream rng = RandomStream::from_key(
        cfg.master_seed, {detail::kGoldSide, static_cast<std::uint64_t>(n)});
    std::vector<double> own_xi(cfg.m_gold);
    std::vector<double> other_xi(cfg.m_target);
    const RunOutput<X> run = gold.simulate(rng);
    own_xi[0] = run.log_xi;
    for (int m = 1; m < cfg.m_gold; ++m)
      own_xi[m] = gold.meta_simulate(run.output, rng);
    for (int m = 0; m < cfg.m_target; ++m)
      other_xi[m] = target.meta_simulate(run.output, rng);
    est.gold_terms[n] = log_mean_exp(own_xi) - log_mean_exp(other_xi);
  });

  run_indexed(cfg.n_target, threads, [&](int n) {
    RandomStream rng = RandomStream::from_key(
        cfg.master_seed, {detail::kTargetSide, static_cast<std::uint64_t>(n)});
    std::vector<double> own_xi(cfg.m_target);
    std::vector<double> other_xi(cfg.m_gold);
    const RunOutput<X> run = target.simulate(rng);
    own_xi[0] = run.log_xi;
    for (int m = 1; m < cfg.m_target; ++m)
      own_xi[m] = target.meta_simulate(run.output, rng);
    for (int m = 0; m < cfg.m_gold; ++m)
      other_xi[m] = gold.meta_simulate(run.output, rng);
    est.target_terms[n] = log_mean_exp(own_xi) - log_mean_exp(other_xi);
  });

  detail::finalize_estimate(est);
  return est;
}

/// The estimator specialized to an annealed-chain gold standard against a
/// variational approximation, with m_gold fixed at 1:
///
///   mean_n log( p(x_n, y) / (q(x_n) phat_n) )     x_n from forward runs
/// - mean_n log( p(x_n', y) / (q(x_n') phat_n') )  x_n' from q, reverse runs
///
/// Seed-paired with the generic estimator configured the same way, this
/// produces bit-identical estimates.
template <typename X>
AideEstimate aide_ais_vs_variational(const AisSettings<X>& ais,
                                     const Distribution<X>& q_theta,
                                     int n_gold, int n_target,
                                     std::uint64_t master_seed,
                                     int threads = 1) {
  ais.validate();
  AideConfig cfg;
  cfg.n_gold = n_gold;
  cfg.n_target = n_target;
  cfg.m_gold = 1;
  cfg.m_target = 1;
  cfg.master_seed = master_seed;
  cfg.validate();

  const UnnormalizedTarget<X> joint = ais.schedule[ais.schedule.n_steps - 1];
  AideEstimate est;
  est.config = cfg;
  est.gold_terms.assign(n_gold, 0.0);
  est.target_terms.assign(n_target, 0.0);

  run_indexed(n_gold, threads, [&](int n) {
    RandomStream rng = RandomStream::from_key(
        master_seed, {detail::kGoldSide, static_cast<std::uint64_t>(n)});
    const AisRun<X> run = ais_forward(ais, rng);
    est.gold_terms[n] =
        (joint.log_density(run.output) - run.log_ml_estimate) -
        q_theta.log_density(run.output);
  });

  run_indexed(n_target, threads, [&](int n) {
    RandomStream rng = RandomStream::from_key(
        master_seed, {detail::kTargetSide, static_cast<std::uint64_t>(n)});
    const X x = q_theta.sample(rng);
    const double log_joint = joint.log_density(x);
    if (log_joint == kNegInf) {
      est.target_terms[n] = kPosInf;
      return;
    }
    const AisRun<X> run = ais_reverse(ais, x, rng);
    est.target_terms[n] =
        q_theta.log_density(x) - (log_joint - run.log_ml_estimate);
  });

  detail::finalize_estimate(est);
  return est;
}

}  // namespace aide

#endif  // AIDE_AIDE_HPP
