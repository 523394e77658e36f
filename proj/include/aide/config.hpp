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

#ifndef AIDE_CONFIG_HPP
#define AIDE_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "aide/bimodal.hpp"
#include "aide/hmm.hpp"
#include "aide/linreg.hpp"

// Experiment configurations, parsed from JSON with strict validation:
// every field is type- and range-checked, unknown keys are rejected, and
// errors carry the offending field's path. The schemas are documented in
// the README; configs/ ships a default file per experiment.

namespace aide {

using Json = nlohmann::json;

/// Models are constructible from config blobs.
DiscreteHmm hmm_from_json(const Json& j, const std::string& path);
SymbolSequence symbols_from_json(const Json& j, const std::string& path,
                                 const DiscreteHmm& model);
ConjugateLinReg linreg_from_json(const Json& j, const std::string& path);
BimodalTarget bimodal_from_json(const Json& j, const std::string& path);

struct LinregSweepConfig {
  ConjugateLinReg model;
  std::vector<int> smc_particles{1, 4, 16, 64};
  int smc_schedule_length = 20;
  double smc_step_size = 0.5;
  int smc_mh_sweeps = 1;
  std::vector<int> mh_burn_in{2, 8, 32};
  double mh_step_size = 0.5;
  Vector mh_init_mean;     // empty -> prior mean
  double mh_init_std = 1.0;
  std::vector<int> m_target_grid{1, 10, 100};
  int n_gold = 300;
  int n_target = 300;
  std::uint64_t master_seed = 0;

  void validate() const;
  static LinregSweepConfig from_json(const Json& j);
  Json to_json() const;
};

struct HmmSweepConfig {
  DiscreteHmm model{{1.0}, {{1.0}}, {{1.0}}, 1};
  SymbolSequence observations{0};
  std::vector<int> prior_particles{1, 10, 100};
  std::vector<int> optimal_particles{1, 10, 100};
  int gold_smc_particles = 300;
  std::vector<int> m_target_grid{1, 10, 100};
  int n_gold = 120;
  int n_target = 120;
  std::uint64_t master_seed = 0;

  void validate() const;
  static HmmSweepConfig from_json(const Json& j);
  Json to_json() const;
};

struct BimodalConfig {
  BimodalTarget target{{-2.0, 2.0}, {0.5, 0.5}, {0.1, 0.9}};
  double broad_mean = 0.0;
  double broad_std = 3.0;
  double offset_mean = 2.0;
  double offset_std = 0.6;
  std::vector<int> particle_grid{1, 10, 100, 1000};
  int n_runs = 2000;
  std::uint64_t master_seed = 0;

  void validate() const;
  static BimodalConfig from_json(const Json& j);
  Json to_json() const;
};

struct PropertySuiteConfig {
  int upper_bound_replications = 10000;
  int monotonicity_replications = 10000;
  int evidence_runs = 20000;
  int xi_identity_runs = 200;
  int symmetry_estimates = 10000;
  int trace_tv_runs = 100000;
  std::uint64_t master_seed = 0;
  double inject_xi_log_bias = 0.0;  // fault injection for sensitivity tests

  void validate() const;
  static PropertySuiteConfig from_json(const Json& j);
  Json to_json() const;
};

/// Overrides shared by every experiment subcommand.
struct CommonOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

Json load_json_file(const std::string& path);

struct AideEstimate;
struct DiagnosticReport;

/// Serialization hooks so estimates drop into JSON documents directly.
void to_json(Json& j, const AideEstimate& estimate);
void to_json(Json& j, const DiagnosticReport& report);

}  // namespace aide

#endif  // AIDE_CONFIG_HPP
