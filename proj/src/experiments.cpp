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

#include "aide/experiments.hpp"

#include <cstdio>

#include "aide/baselines.hpp"
#include "aide/hmm_smc.hpp"

#ifndef AIDE_GIT_DESCRIBE
#define AIDE_GIT_DESCRIBE "unknown"
#endif

namespace aide {

std::string version_string() { return AIDE_GIT_DESCRIBE; }

std::string format_csv_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

Json make_sidecar(const std::string& experiment, Json config, int threads) {
  Json j;
  j["experiment"] = experiment;
  j["config"] = std::move(config);
  j["provenance"] = {{"version", version_string()}, {"threads", threads}};
  return j;
}

/// Annealed SMC target for the regression problem.
AisSettings<Vector> linreg_ais_settings(const LinregSweepConfig& cfg,
                                        const Model<Vector>& posed) {
  const GaussianDensity prior(
      cfg.model.prior_mean,
      Eigen::LLT<Matrix>(cfg.model.prior_precision)
          .solve(Matrix::Identity(cfg.model.dim(), cfg.model.dim())));
  AisSettings<Vector> settings;
  settings.init = prior.as_distribution();
  UnnormalizedTarget<Vector> prior_target{settings.init.log_density};
  settings.schedule = geometric_schedule(prior_target, posed.joint_target(),
                                         cfg.smc_schedule_length);
  settings.kernels.reserve(cfg.smc_schedule_length - 1);
  for (int s = 0; s + 1 < cfg.smc_schedule_length; ++s) {
    settings.kernels.push_back(
        make_mh_kernel(settings.schedule[s],
                       gaussian_random_walk_vec(cfg.smc_step_size),
                       cfg.smc_mh_sweeps));
  }
  return settings;
}

struct LinregRow {
  std::string algorithm;
  long long parameter = 0;
  int m_target = 1;
  AideEstimate estimate;
  std::uint64_t seed = 0;
};

double mean_lml_of(const InferenceAlgorithm<double>& alg, int n,
                   std::uint64_t seed, double* se_out) {
  std::vector<double> values(n);
  for (int i = 0; i < n; ++i) {
    RandomStream rng =
        RandomStream::from_key(seed, {9, static_cast<std::uint64_t>(i)});
    const RunOutput<double> run = alg.simulate(rng);
    if (!run.log_ml)
      throw UnsupportedAlgorithmError("bimodal: algorithm reports no evidence");
    values[i] = *run.log_ml;
  }
  if (se_out) *se_out = standard_error(values);
  return mean(values);
}

}  // namespace

ExperimentResult run_linreg_sweep(const LinregSweepConfig& cfg, int threads) {
  cfg.validate();
  const Model<Vector> posed = make_linreg_model(cfg.model);
  const LinRegPosterior post = linreg_posterior(cfg.model);
  const InferenceAlgorithm<Vector> gold = make_exact_posterior_algorithm(posed);

  const AisSettings<Vector> smc_settings = linreg_ais_settings(cfg, posed);

  Vector init_mean = cfg.mh_init_mean.size() > 0 ? cfg.mh_init_mean
                                                 : cfg.model.prior_mean;
  const GaussianDensity mh_init(
      init_mean, cfg.mh_init_std * cfg.mh_init_std *
                     Matrix::Identity(cfg.model.dim(), cfg.model.dim()));
  const MarkovKernel<Vector> mh_kernel = make_mh_kernel(
      posed.joint_target(), gaussian_random_walk_vec(cfg.mh_step_size));

  const DiagonalGaussian meanfield =
      fit_meanfield_gaussian(post.mean, post.covariance);

  // Grid in output order.
  std::vector<LinregRow> rows;
  for (int particles : cfg.smc_particles) {
    LinregRow row;
    row.algorithm = "smc";
    row.parameter = particles;
    row.m_target = 1;
    rows.push_back(row);
  }
  for (int burn_in : cfg.mh_burn_in) {
    for (int m : cfg.m_target_grid) {
      LinregRow row;
      row.algorithm = "mh";
      row.parameter = burn_in;
      row.m_target = m;
      rows.push_back(row);
    }
  }
  for (int m : cfg.m_target_grid) {
    LinregRow row;
    row.algorithm = "variational";
    row.parameter = m;
    row.m_target = m;
    rows.push_back(row);
  }

  run_indexed(static_cast<int>(rows.size()), threads, [&](int idx) {
    LinregRow& row = rows[idx];
    AideConfig aide_cfg;
    aide_cfg.n_gold = cfg.n_gold;
    aide_cfg.n_target = cfg.n_target;
    aide_cfg.m_gold = 1;
    aide_cfg.m_target = row.m_target;
    InferenceAlgorithm<Vector> target;
    std::uint64_t algorithm_id = 0;
    if (row.algorithm == "smc") {
      algorithm_id = 1;
      target = make_smc_algorithm(
          smc_spec_from_ais(smc_settings, static_cast<int>(row.parameter)));
    } else if (row.algorithm == "mh") {
      algorithm_id = 2;
      target = make_mh_algorithm(mh_init.as_distribution(), mh_kernel,
                                 static_cast<int>(row.parameter), posed);
    } else {
      algorithm_id = 3;
      target = make_exact_density_algorithm(meanfield.as_distribution());
    }
    // Seed shared across m_target values of one cell so the bound
    // comparisons are paired.
    row.seed = derive_seed(cfg.master_seed,
                           {algorithm_id,
                            static_cast<std::uint64_t>(row.parameter)});
    aide_cfg.master_seed = row.seed;
    row.estimate = aide(gold, target, aide_cfg, 1);
  });

  std::string csv =
      "experiment,algorithm,parameter,m_target,n_gold,n_target,m_gold,"
      "estimate,std_error,seed\n";
  for (const LinregRow& row : rows) {
    csv += "linreg-sweep," + row.algorithm + "," +
           std::to_string(row.parameter) + "," + std::to_string(row.m_target) +
           "," + std::to_string(cfg.n_gold) + "," + std::to_string(cfg.n_target) +
           ",1," + format_csv_value(row.estimate.estimate) + "," +
           format_csv_value(row.estimate.std_error) + "," +
           std::to_string(row.seed) + "\n";
  }
  return {csv, make_sidecar("linreg-sweep", cfg.to_json(), threads)};
}

ExperimentResult run_hmm_sweep(const HmmSweepConfig& cfg, int threads) {
  cfg.validate();
  const Model<StateSequence> posed = make_hmm_model(cfg.model, cfg.observations);
  const InferenceAlgorithm<StateSequence> exact_gold =
      make_exact_posterior_algorithm(posed);
  const InferenceAlgorithm<StateSequence> smc_gold =
      make_smc_algorithm(hmm_smc_spec(cfg.model, cfg.observations,
                                      cfg.gold_smc_particles,
                                      HmmProposal::optimal));

  struct HmmRow {
    std::string gold;
    std::string proposal;
    int particles = 1;
    int m_target = 1;
    AideEstimate estimate;
    std::uint64_t seed = 0;
  };
  std::vector<HmmRow> rows;
  for (const char* gold_name : {"exact", "smc"}) {
    for (const char* proposal_name : {"prior", "optimal"}) {
      const auto& grid = std::string(proposal_name) == "prior"
                             ? cfg.prior_particles
                             : cfg.optimal_particles;
      for (int particles : grid) {
        for (int m : cfg.m_target_grid) {
          HmmRow row;
          row.gold = gold_name;
          row.proposal = proposal_name;
          row.particles = particles;
          row.m_target = m;
          rows.push_back(row);
        }
      }
    }
  }

  run_indexed(static_cast<int>(rows.size()), threads, [&](int idx) {
    HmmRow& row = rows[idx];
    const InferenceAlgorithm<StateSequence>& gold =
        row.gold == "exact" ? exact_gold : smc_gold;
    const HmmProposal proposal = row.proposal == "prior" ? HmmProposal::prior
                                                         : HmmProposal::optimal;
    const InferenceAlgorithm<StateSequence> target = make_smc_algorithm(
        hmm_smc_spec(cfg.model, cfg.observations, row.particles, proposal));
    AideConfig aide_cfg;
    aide_cfg.n_gold = cfg.n_gold;
    aide_cfg.n_target = cfg.n_target;
    aide_cfg.m_gold = 1;
    aide_cfg.m_target = row.m_target;
    row.seed = derive_seed(
        cfg.master_seed,
        {row.gold == "exact" ? std::uint64_t{0} : std::uint64_t{1},
         row.proposal == "prior" ? std::uint64_t{0} : std::uint64_t{1},
         static_cast<std::uint64_t>(row.particles)});
    aide_cfg.master_seed = row.seed;
    row.estimate = aide(gold, target, aide_cfg, 1);
  });

  std::string csv =
      "experiment,gold,proposal,particles,m_target,n_gold,n_target,m_gold,"
      "estimate,std_error,seed\n";
  for (const auto& row : rows) {
    csv += "hmm-sweep," + row.gold + "," + row.proposal + "," +
           std::to_string(row.particles) + "," + std::to_string(row.m_target) +
           "," + std::to_string(cfg.n_gold) + "," +
           std::to_string(cfg.n_target) + ",1," +
           format_csv_value(row.estimate.estimate) + "," +
           format_csv_value(row.estimate.std_error) + "," +
           std::to_string(row.seed) + "\n";
  }
  return {csv, make_sidecar("hmm-sweep", cfg.to_json(), threads)};
}

ExperimentResult run_bimodal(const BimodalConfig& cfg, int threads) {
  cfg.validate();
  const Model<double> posed = make_bimodal_model(cfg.target);
  const InferenceAlgorithm<double> gold = make_exact_posterior_algorithm(posed);

  struct BimodalRow {
    std::string proposal;
    int particles = 1;
    AideEstimate estimate;
    double mean_lml = 0.0;
    double lml_se = 0.0;
    std::uint64_t seed = 0;
  };
  std::vector<BimodalRow> rows;
  for (const char* proposal_name : {"broad", "offset"}) {
    for (int particles : cfg.particle_grid) {
      BimodalRow row;
      row.proposal = proposal_name;
      row.particles = particles;
      rows.push_back(row);
    }
  }

  run_indexed(static_cast<int>(rows.size()), threads, [&](int idx) {
    BimodalRow& row = rows[idx];
    const Distribution<double> proposal =
        row.proposal == "broad"
            ? gaussian_proposal(cfg.broad_mean, cfg.broad_std)
            : gaussian_proposal(cfg.offset_mean, cfg.offset_std);
    const InferenceAlgorithm<double> target =
        make_sir_algorithm(proposal, posed.joint_target(), row.particles);
    AideConfig aide_cfg;
    aide_cfg.n_gold = cfg.n_runs;
    aide_cfg.n_target = cfg.n_runs;
    aide_cfg.m_gold = 1;
    aide_cfg.m_target = 1;
    row.seed = derive_seed(
        cfg.master_seed,
        {row.proposal == "broad" ? std::uint64_t{0} : std::uint64_t{1},
         static_cast<std::uint64_t>(row.particles)});
    aide_cfg.master_seed = row.seed;
    row.estimate = aide(gold, target, aide_cfg, 1);
    row.mean_lml = mean_lml_of(target, cfg.n_runs, row.seed, &row.lml_se);
  });

  std::string csv =
      "experiment,proposal,particles,estimate,std_error,mean_lml,lml_se,"
      "n_runs,seed\n";
  for (const auto& row : rows) {
    csv += "bimodal," + row.proposal + "," + std::to_string(row.particles) +
           "," + format_csv_value(row.estimate.estimate) + "," +
           format_csv_value(row.estimate.std_error) + "," +
           format_csv_value(row.mean_lml) + "," +
           format_csv_value(row.lml_se) + "," + std::to_string(cfg.n_runs) +
           "," + std::to_string(row.seed) + "\n";
  }
  return {csv, make_sidecar("bimodal", cfg.to_json(), threads)};
}

}  // namespace aide
