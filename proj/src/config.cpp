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

#include "aide/config.hpp"

#include <fstream>

#include "aide/baselines.hpp"
#include "aide/errors.hpp"

namespace aide {

namespace {

void reject_unknown_keys(const Json& j, const std::string& path,
                         std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) throw ConfigError(path + "." + item.key(), "unknown key");
  }
}

double get_double(const Json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) throw ConfigError(path + "." + key, "missing field");
  if (!j[key].is_number())
    throw ConfigError(path + "." + key, "expected a number");
  return j[key].get<double>();
}

double get_double_or(const Json& j, const std::string& path, const char* key,
                     double fallback) {
  return j.contains(key) ? get_double(j, path, key) : fallback;
}

int get_int(const Json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) throw ConfigError(path + "." + key, "missing field");
  if (!j[key].is_number_integer())
    throw ConfigError(path + "." + key, "expected an integer");
  return j[key].get<int>();
}

int get_int_or(const Json& j, const std::string& path, const char* key,
               int fallback) {
  return j.contains(key) ? get_int(j, path, key) : fallback;
}

std::uint64_t get_seed_or(const Json& j, const std::string& path,
                          const char* key, std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_unsigned() && !j[key].is_number_integer())
    throw ConfigError(path + "." + key, "expected an integer seed");
  return j[key].get<std::uint64_t>();
}

std::vector<double> get_double_vector(const Json& j, const std::string& path,
                                      const char* key) {
  if (!j.contains(key)) throw ConfigError(path + "." + key, "missing field");
  if (!j[key].is_array())
    throw ConfigError(path + "." + key, "expected an array");
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number())
      throw ConfigError(path + "." + key, "expected numeric entries");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<int> get_int_vector_or(const Json& j, const std::string& path,
                                   const char* key, std::vector<int> fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_array())
    throw ConfigError(path + "." + key, "expected an array");
  std::vector<int> out;
  for (const auto& v : j[key]) {
    if (!v.is_number_integer())
      throw ConfigError(path + "." + key, "expected integer entries");
    out.push_back(v.get<int>());
  }
  if (out.empty()) throw ConfigError(path + "." + key, "array must be non-empty");
  return out;
}

std::vector<std::vector<double>> get_matrix(const Json& j,
                                            const std::string& path,
                                            const char* key) {
  if (!j.contains(key)) throw ConfigError(path + "." + key, "missing field");
  if (!j[key].is_array())
    throw ConfigError(path + "." + key, "expected an array of rows");
  std::vector<std::vector<double>> out;
  for (const auto& row : j[key]) {
    if (!row.is_array())
      throw ConfigError(path + "." + key, "expected rows to be arrays");
    std::vector<double> r;
    for (const auto& v : row) {
      if (!v.is_number())
        throw ConfigError(path + "." + key, "expected numeric entries");
      r.push_back(v.get<double>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

Vector to_eigen(const std::vector<double>& v) {
  Vector out(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<int>(i)) = v[i];
  return out;
}

Matrix to_eigen(const std::vector<std::vector<double>>& m,
                const std::string& path) {
  if (m.empty()) return Matrix(0, 0);
  const std::size_t cols = m.front().size();
  Matrix out(static_cast<int>(m.size()), static_cast<int>(cols));
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != cols) throw ConfigError(path, "ragged matrix rows");
    for (std::size_t k = 0; k < cols; ++k)
      out(static_cast<int>(i), static_cast<int>(k)) = m[i][k];
  }
  return out;
}

void check_positive_counts(const std::string& path,
                           std::initializer_list<std::pair<const char*, int>> counts) {
  for (const auto& [name, value] : counts) {
    if (value < 1)
      throw ConfigError(path + "." + name, "must be >= 1");
  }
}

void check_particle_grid(const std::string& path, const char* key,
                         const std::vector<int>& grid) {
  if (grid.empty()) throw ConfigError(path + "." + key, "must be non-empty");
  for (int p : grid)
    if (p < 1) throw ConfigError(path + "." + key, "entries must be >= 1");
}

}  // namespace

void to_json(Json& j, const AideEstimate& estimate) {
  j = Json{{"estimate", estimate.estimate},
           {"std_error", estimate.std_error},
           {"n_gold", estimate.config.n_gold},
           {"n_target", estimate.config.n_target},
           {"m_gold", estimate.config.m_gold},
           {"m_target", estimate.config.m_target},
           {"seed", estimate.config.master_seed}};
  if (!estimate.is_finite()) {
    j["infinite_gold_runs"] = estimate.infinite_gold_runs;
    j["infinite_target_runs"] = estimate.infinite_target_runs;
  }
}

void to_json(Json& j, const DiagnosticReport& report) {
  j = Json{{"gold_value", report.gold_value},
           {"target_value", report.target_value},
           {"gold_se", report.gold_se},
           {"target_se", report.target_se},
           {"n_runs", report.n_runs}};
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ConfigError(path, std::string("parse error: ") + e.what());
  }
  return j;
}

DiscreteHmm hmm_from_json(const Json& j, const std::string& path) {
  reject_unknown_keys(j, path,
                      {"initial_dist", "transition", "emission", "n_steps"});
  try {
    return DiscreteHmm(get_double_vector(j, path, "initial_dist"),
                       get_matrix(j, path, "transition"),
                       get_matrix(j, path, "emission"),
                       get_int(j, path, "n_steps"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
}

SymbolSequence symbols_from_json(const Json& j, const std::string& path,
                                 const DiscreteHmm& model) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of symbols");
  SymbolSequence obs;
  for (const auto& v : j) {
    if (!v.is_number_integer())
      throw ConfigError(path, "expected integer symbols");
    obs.push_back(v.get<int>());
  }
  if (obs.size() != static_cast<std::size_t>(model.n_steps()))
    throw ConfigError(path, "observation length must equal n_steps");
  for (int s : obs)
    if (s < 0 || s >= model.n_symbols())
      throw ConfigError(path, "symbol out of alphabet");
  return obs;
}

ConjugateLinReg linreg_from_json(const Json& j, const std::string& path) {
  reject_unknown_keys(j, path, {"prior_mean", "prior_precision",
                                "noise_variance", "design", "response"});
  ConjugateLinReg model;
  model.prior_mean = to_eigen(get_double_vector(j, path, "prior_mean"));
  model.prior_precision =
      to_eigen(get_matrix(j, path, "prior_precision"), path);
  model.noise_variance = get_double(j, path, "noise_variance");
  model.design = to_eigen(get_matrix(j, path, "design"), path);
  model.response = to_eigen(get_double_vector(j, path, "response"));
  if (model.design.rows() == 0) model.design.resize(0, model.dim());
  try {
    model.validate();
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
  return model;
}

BimodalTarget bimodal_from_json(const Json& j, const std::string& path) {
  reject_unknown_keys(j, path, {"means", "stds", "weights"});
  const auto means = get_double_vector(j, path, "means");
  const auto stds = get_double_vector(j, path, "stds");
  const auto weights = get_double_vector(j, path, "weights");
  if (means.size() != 2 || stds.size() != 2 || weights.size() != 2)
    throw ConfigError(path, "means/stds/weights must each have two entries");
  BimodalTarget target;
  target.component_means = {means[0], means[1]};
  target.component_stds = {stds[0], stds[1]};
  target.component_weights = {weights[0], weights[1]};
  try {
    target.validate();
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
  return target;
}

namespace {

// Built-in models used when a config omits them; configs/ ships the same
// values as JSON.
ConjugateLinReg default_linreg_model() {
  ConjugateLinReg model;
  model.prior_mean = Vector::Zero(2);
  model.prior_precision = Matrix::Identity(2, 2);
  model.noise_variance = 1.0;
  model.design = Matrix(8, 2);
  model.design << 1.0, 0.3, 1.0, 0.5, 1.0, 0.7, 1.0, 0.9, 1.0, 1.1, 1.0, 1.3,
      1.0, 1.5, 1.0, 1.7;
  model.response = Vector(8);
  model.response << 1.20, 1.21, 1.39, 1.44, 1.56, 1.63, 1.72, 1.93;
  return model;
}

DiscreteHmm default_hmm_model() {
  return DiscreteHmm({0.5, 0.3, 0.2},
                     {{0.7, 0.2, 0.1}, {0.15, 0.7, 0.15}, {0.1, 0.25, 0.65}},
                     {{0.8, 0.15, 0.05}, {0.1, 0.8, 0.1}, {0.05, 0.2, 0.75}},
                     8);
}

const SymbolSequence kDefaultHmmObservations{0, 0, 1, 1, 2, 2, 1, 0};

}  // namespace

void LinregSweepConfig::validate() const {
  model.validate();
  check_particle_grid("linreg_sweep", "smc_particles", smc_particles);
  check_particle_grid("linreg_sweep", "m_target_grid", m_target_grid);
  if (smc_schedule_length < 1)
    throw ConfigError("linreg_sweep.smc_schedule_length", "must be >= 1");
  if (!(smc_step_size > 0.0) || !(mh_step_size > 0.0) || !(mh_init_std > 0.0))
    throw ConfigError("linreg_sweep", "step sizes and init std must be > 0");
  if (smc_mh_sweeps < 1)
    throw ConfigError("linreg_sweep.smc_mh_sweeps", "must be >= 1");
  for (int b : mh_burn_in)
    if (b < 0) throw ConfigError("linreg_sweep.mh_burn_in", "must be >= 0");
  check_positive_counts("linreg_sweep",
                        {{"n_gold", n_gold}, {"n_target", n_target}});
  if (mh_init_mean.size() != 0 && mh_init_mean.size() != model.dim())
    throw ConfigError("linreg_sweep.mh_init_mean", "dimension mismatch");
}

LinregSweepConfig LinregSweepConfig::from_json(const Json& j) {
  const std::string path = "linreg_sweep";
  reject_unknown_keys(
      j, path,
      {"model", "smc_particles", "smc_schedule_length", "smc_step_size",
       "smc_mh_sweeps", "mh_burn_in", "mh_step_size", "mh_init_mean",
       "mh_init_std", "m_target_grid", "n_gold", "n_target", "master_seed"});
  LinregSweepConfig cfg;
  cfg.model = j.contains("model")
                  ? linreg_from_json(j["model"], path + ".model")
                  : default_linreg_model();
  cfg.smc_particles =
      get_int_vector_or(j, path, "smc_particles", cfg.smc_particles);
  cfg.smc_schedule_length =
      get_int_or(j, path, "smc_schedule_length", cfg.smc_schedule_length);
  cfg.smc_step_size = get_double_or(j, path, "smc_step_size", cfg.smc_step_size);
  cfg.smc_mh_sweeps = get_int_or(j, path, "smc_mh_sweeps", cfg.smc_mh_sweeps);
  cfg.mh_burn_in = get_int_vector_or(j, path, "mh_burn_in", cfg.mh_burn_in);
  cfg.mh_step_size = get_double_or(j, path, "mh_step_size", cfg.mh_step_size);
  if (j.contains("mh_init_mean"))
    cfg.mh_init_mean = to_eigen(get_double_vector(j, path, "mh_init_mean"));
  cfg.mh_init_std = get_double_or(j, path, "mh_init_std", cfg.mh_init_std);
  cfg.m_target_grid =
      get_int_vector_or(j, path, "m_target_grid", cfg.m_target_grid);
  cfg.n_gold = get_int_or(j, path, "n_gold", cfg.n_gold);
  cfg.n_target = get_int_or(j, path, "n_target", cfg.n_target);
  cfg.master_seed = get_seed_or(j, path, "master_seed", cfg.master_seed);
  cfg.validate();
  return cfg;
}

Json LinregSweepConfig::to_json() const {
  Json j;
  Json model_json;
  model_json["prior_mean"] =
      std::vector<double>(model.prior_mean.data(),
                          model.prior_mean.data() + model.prior_mean.size());
  std::vector<std::vector<double>> precision;
  for (int r = 0; r < model.prior_precision.rows(); ++r) {
    precision.emplace_back();
    for (int c = 0; c < model.prior_precision.cols(); ++c)
      precision.back().push_back(model.prior_precision(r, c));
  }
  model_json["prior_precision"] = precision;
  model_json["noise_variance"] = model.noise_variance;
  std::vector<std::vector<double>> design;
  for (int r = 0; r < model.design.rows(); ++r) {
    design.emplace_back();
    for (int c = 0; c < model.design.cols(); ++c)
      design.back().push_back(model.design(r, c));
  }
  model_json["design"] = design;
  model_json["response"] =
      std::vector<double>(model.response.data(),
                          model.response.data() + model.response.size());
  j["model"] = model_json;
  j["smc_particles"] = smc_particles;
  j["smc_schedule_length"] = smc_schedule_length;
  j["smc_step_size"] = smc_step_size;
  j["smc_mh_sweeps"] = smc_mh_sweeps;
  j["mh_burn_in"] = mh_burn_in;
  j["mh_step_size"] = mh_step_size;
  if (mh_init_mean.size() > 0)
    j["mh_init_mean"] = std::vector<double>(
        mh_init_mean.data(), mh_init_mean.data() + mh_init_mean.size());
  j["mh_init_std"] = mh_init_std;
  j["m_target_grid"] = m_target_grid;
  j["n_gold"] = n_gold;
  j["n_target"] = n_target;
  j["master_seed"] = master_seed;
  return j;
}

void HmmSweepConfig::validate() const {
  if (observations.size() != static_cast<std::size_t>(model.n_steps()))
    throw ConfigError("hmm_sweep.observations", "length must equal n_steps");
  check_particle_grid("hmm_sweep", "prior_particles", prior_particles);
  check_particle_grid("hmm_sweep", "optimal_particles", optimal_particles);
  check_particle_grid("hmm_sweep", "m_target_grid", m_target_grid);
  if (gold_smc_particles < 1)
    throw ConfigError("hmm_sweep.gold_smc_particles", "must be >= 1");
  check_positive_counts("hmm_sweep",
                        {{"n_gold", n_gold}, {"n_target", n_target}});
}

HmmSweepConfig HmmSweepConfig::from_json(const Json& j) {
  const std::string path = "hmm_sweep";
  reject_unknown_keys(j, path,
                      {"model", "observations", "prior_particles",
                       "optimal_particles", "gold_smc_particles",
                       "m_target_grid", "n_gold", "n_target", "master_seed"});
  HmmSweepConfig cfg;
  if (j.contains("model")) {
    if (!j.contains("observations"))
      throw ConfigError(path + ".observations",
                        "missing field (required alongside model)");
    cfg.model = hmm_from_json(j["model"], path + ".model");
    cfg.observations =
        symbols_from_json(j["observations"], path + ".observations", cfg.model);
  } else {
    cfg.model = default_hmm_model();
    cfg.observations = j.contains("observations")
                           ? symbols_from_json(j["observations"],
                                               path + ".observations", cfg.model)
                           : kDefaultHmmObservations;
  }
  cfg.prior_particles =
      get_int_vector_or(j, path, "prior_particles", cfg.prior_particles);
  cfg.optimal_particles =
      get_int_vector_or(j, path, "optimal_particles", cfg.optimal_particles);
  cfg.gold_smc_particles =
      get_int_or(j, path, "gold_smc_particles", cfg.gold_smc_particles);
  cfg.m_target_grid =
      get_int_vector_or(j, path, "m_target_grid", cfg.m_target_grid);
  cfg.n_gold = get_int_or(j, path, "n_gold", cfg.n_gold);
  cfg.n_target = get_int_or(j, path, "n_target", cfg.n_target);
  cfg.master_seed = get_seed_or(j, path, "master_seed", cfg.master_seed);
  cfg.validate();
  return cfg;
}

Json HmmSweepConfig::to_json() const {
  Json j;
  Json model_json;
  model_json["initial_dist"] = model.initial_dist();
  model_json["transition"] = model.transition();
  model_json["emission"] = model.emission();
  model_json["n_steps"] = model.n_steps();
  j["model"] = model_json;
  j["observations"] = observations;
  j["prior_particles"] = prior_particles;
  j["optimal_particles"] = optimal_particles;
  j["gold_smc_particles"] = gold_smc_particles;
  j["m_target_grid"] = m_target_grid;
  j["n_gold"] = n_gold;
  j["n_target"] = n_target;
  j["master_seed"] = master_seed;
  return j;
}

void BimodalConfig::validate() const {
  target.validate();
  if (!(broad_std > 0.0) || !(offset_std > 0.0))
    throw ConfigError("bimodal", "proposal stds must be > 0");
  check_particle_grid("bimodal", "particle_grid", particle_grid);
  if (n_runs < 2) throw ConfigError("bimodal.n_runs", "must be >= 2");
}

BimodalConfig BimodalConfig::from_json(const Json& j) {
  const std::string path = "bimodal";
  reject_unknown_keys(j, path,
                      {"target", "broad_mean", "broad_std", "offset_mean",
                       "offset_std", "particle_grid", "n_runs", "master_seed"});
  BimodalConfig cfg;
  if (j.contains("target"))
    cfg.target = bimodal_from_json(j["target"], path + ".target");
  cfg.broad_mean = get_double_or(j, path, "broad_mean", cfg.broad_mean);
  cfg.broad_std = get_double_or(j, path, "broad_std", cfg.broad_std);
  cfg.offset_mean = get_double_or(j, path, "offset_mean", cfg.offset_mean);
  cfg.offset_std = get_double_or(j, path, "offset_std", cfg.offset_std);
  cfg.particle_grid =
      get_int_vector_or(j, path, "particle_grid", cfg.particle_grid);
  cfg.n_runs = get_int_or(j, path, "n_runs", cfg.n_runs);
  cfg.master_seed = get_seed_or(j, path, "master_seed", cfg.master_seed);
  cfg.validate();
  return cfg;
}

Json BimodalConfig::to_json() const {
  Json j;
  Json target_json;
  target_json["means"] =
      std::vector<double>{target.component_means[0], target.component_means[1]};
  target_json["stds"] =
      std::vector<double>{target.component_stds[0], target.component_stds[1]};
  target_json["weights"] = std::vector<double>{target.component_weights[0],
                                               target.component_weights[1]};
  j["target"] = target_json;
  j["broad_mean"] = broad_mean;
  j["broad_std"] = broad_std;
  j["offset_mean"] = offset_mean;
  j["offset_std"] = offset_std;
  j["particle_grid"] = particle_grid;
  j["n_runs"] = n_runs;
  j["master_seed"] = master_seed;
  return j;
}

void PropertySuiteConfig::validate() const {
  check_positive_counts(
      "property_suite",
      {{"upper_bound_replications", upper_bound_replications},
       {"monotonicity_replications", monotonicity_replications},
       {"evidence_runs", evidence_runs},
       {"xi_identity_runs", xi_identity_runs},
       {"symmetry_estimates", symmetry_estimates},
       {"trace_tv_runs", trace_tv_runs}});
}

PropertySuiteConfig PropertySuiteConfig::from_json(const Json& j) {
  const std::string path = "property_suite";
  reject_unknown_keys(
      j, path,
      {"upper_bound_replications", "monotonicity_replications",
       "evidence_runs", "xi_identity_runs", "symmetry_estimates",
       "trace_tv_runs", "master_seed", "inject_xi_log_bias"});
  PropertySuiteConfig cfg;
  cfg.upper_bound_replications = get_int_or(
      j, path, "upper_bound_replications", cfg.upper_bound_replications);
  cfg.monotonicity_replications = get_int_or(
      j, path, "monotonicity_replications", cfg.monotonicity_replications);
  cfg.evidence_runs = get_int_or(j, path, "evidence_runs", cfg.evidence_runs);
  cfg.xi_identity_runs =
      get_int_or(j, path, "xi_identity_runs", cfg.xi_identity_runs);
  cfg.symmetry_estimates =
      get_int_or(j, path, "symmetry_estimates", cfg.symmetry_estimates);
  cfg.trace_tv_runs = get_int_or(j, path, "trace_tv_runs", cfg.trace_tv_runs);
  cfg.master_seed = get_seed_or(j, path, "master_seed", cfg.master_seed);
  cfg.inject_xi_log_bias =
      get_double_or(j, path, "inject_xi_log_bias", cfg.inject_xi_log_bias);
  cfg.validate();
  return cfg;
}

Json PropertySuiteConfig::to_json() const {
  Json j;
  j["upper_bound_replications"] = upper_bound_replications;
  j["monotonicity_replications"] = monotonicity_replications;
  j["evidence_runs"] = evidence_runs;
  j["xi_identity_runs"] = xi_identity_runs;
  j["symmetry_estimates"] = symmetry_estimates;
  j["trace_tv_runs"] = trace_tv_runs;
  j["master_seed"] = master_seed;
  j["inject_xi_log_bias"] = inject_xi_log_bias;
  return j;
}

}  // namespace aide
