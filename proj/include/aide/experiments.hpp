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

#ifndef AIDE_EXPERIMENTS_HPP
#define AIDE_EXPERIMENTS_HPP

#include <string>

#include "aide/aide.hpp"
#include "aide/config.hpp"

// The experiment sweeps behind the CLI. Each returns the CSV text (one row
// per estimate, byte-identical for a given config regardless of thread
// count) and a JSON sidecar of the resolved config plus provenance. Grid
// cells run in parallel; rows are written in grid order.

namespace aide {

struct ExperimentResult {
  std::string csv;
  Json sidecar;
};

/// Divergence of SMC / MH / mean-field variational targets from an exact
/// posterior gold standard on a conjugate regression problem.
/// CSV: experiment,algorithm,parameter,m_target,n_gold,n_target,m_gold,
///      estimate,std_error,seed
ExperimentResult run_linreg_sweep(const LinregSweepConfig& cfg, int threads = 1);

/// Divergence of particle filters (prior and optimal proposals, several
/// particle counts) from both an exact posterior gold standard and an SMC
/// gold standard on the same HMM.
/// CSV: experiment,gold,proposal,particles,m_target,n_gold,n_target,m_gold,
///      estimate,std_error,seed
ExperimentResult run_hmm_sweep(const HmmSweepConfig& cfg, int threads = 1);

/// Divergence and evidence estimates of SIR with a mode-covering and a
/// mode-missing proposal on a two-component posterior.
/// CSV: experiment,proposal,particles,estimate,std_error,mean_lml,lml_se,
///      n_runs,seed
ExperimentResult run_bimodal(const BimodalConfig& cfg, int threads = 1);

/// Library version as embedded at build time.
std::string version_string();

/// Formats a double with round-trip precision for CSV output.
std::string format_csv_value(double v);

}  // namespace aide

#endif  // AIDE_EXPERIMENTS_HPP
