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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "aide/errors.hpp"
#include "aide/experiments.hpp"
#include "aide/parallel.hpp"
#include "aide/properties.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::string out_path = "-";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 0;  // 0 -> all hardware threads
};

void add_common_options(CLI::App* cmd, CliOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Path to a JSON config file");
  cmd->add_option("--out", opts.out_path,
                  "Output path; '-' writes to stdout (default). A sidecar "
                  "<out>.meta.json records the resolved config.");
  cmd->add_option("--seed", opts.seed, "Master seed (overrides the config)")
      ->each([&opts](const std::string&) { opts.seed_given = true; });
  cmd->add_option("--threads", opts.threads,
                  "Worker threads; 0 uses all hardware threads");
}

int resolve_threads(int requested) {
  return requested <= 0 ? aide::max_threads() : requested;
}

void write_output(const CliOptions& opts, const std::string& body,
                  const aide::Json* sidecar) {
  if (opts.out_path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(opts.out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + opts.out_path);
  out << body;
  if (sidecar != nullptr) {
    std::ofstream meta(opts.out_path + ".meta.json");
    meta << sidecar->dump(2) << "\n";
  }
}

template <typename Config, typename Runner>
int run_experiment(const CliOptions& opts, Runner runner) {
  aide::Json raw = aide::Json::object();
  if (!opts.config_path.empty()) raw = aide::load_json_file(opts.config_path);
  Config cfg = Config::from_json(raw);
  if (opts.seed_given) cfg.master_seed = opts.seed;
  const aide::ExperimentResult result =
      runner(cfg, resolve_threads(opts.threads));
  write_output(opts, result.csv, &result.sidecar);
  return 0;
}

int run_properties(const CliOptions& opts) {
  aide::Json raw = aide::Json::object();
  if (!opts.config_path.empty()) raw = aide::load_json_file(opts.config_path);
  aide::PropertySuiteConfig cfg = aide::PropertySuiteConfig::from_json(raw);
  if (opts.seed_given) cfg.master_seed = opts.seed;
  const aide::PropertyReport report =
      aide::run_property_suite(cfg, resolve_threads(opts.threads));
  for (const auto& r : report.results) {
    std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.details
              << "\n";
  }
  write_output(opts, report.to_json().dump(2) + "\n", nullptr);
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "aide: measures the accuracy of approximate inference algorithms by "
      "estimating symmetrized KL divergence bounds between samplers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", aide::version_string());

  CliOptions opts;
  CLI::App* linreg = app.add_subcommand(
      "linreg-sweep", "Divergence of SMC/MH/variational targets from an exact "
                      "gold standard on a conjugate regression problem");
  CLI::App* hmm = app.add_subcommand(
      "hmm-sweep", "Divergence of particle filters from exact and SMC gold "
                   "standards on a hidden Markov model");
  CLI::App* bimodal = app.add_subcommand(
      "bimodal", "Mode-missing detection on a two-component posterior, with "
                 "evidence estimates for comparison");
  CLI::App* properties = app.add_subcommand(
      "property-suite", "Statistical invariants of the estimator, as a "
                        "machine-readable pass/fail report");
  for (CLI::App* cmd : {linreg, hmm, bimodal, properties})
    add_common_options(cmd, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (linreg->parsed())
      return run_experiment<aide::LinregSweepConfig>(opts,
                                                     aide::run_linreg_sweep);
    if (hmm->parsed())
      return run_experiment<aide::HmmSweepConfig>(opts, aide::run_hmm_sweep);
    if (bimodal->parsed())
      return run_experiment<aide::BimodalConfig>(opts, aide::run_bimodal);
    if (properties->parsed()) return run_properties(opts);
  } catch (const aide::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
