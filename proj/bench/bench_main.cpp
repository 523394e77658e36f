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

// Times the serial reference path against the OpenMP path over the
// replication loops, and checks on the way that both produce identical
// estimates.

#include <chrono>
#include <cstdio>

#include "aide/aide.hpp"
#include "aide/hmm_smc.hpp"
#include "aide/parallel.hpp"
#include "aide/properties.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_seconds(const std::function<void()>& body) {
  const auto start = Clock::now();
  body();
  const auto stop = Clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

void report(const char* name, double serial_s, double parallel_s, int threads,
            bool identical) {
  std::printf("%-28s serial %8.3fs   %d-thread %8.3fs   speedup %5.2fx   %s\n",
              name, serial_s, threads, parallel_s, serial_s / parallel_s,
              identical ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  const int threads = aide::max_threads();
  std::printf("hardware threads: %d\n", threads);

  {
    const aide::DiscreteHmm hmm({0.5, 0.3, 0.2},
                                {{0.7, 0.2, 0.1}, {0.15, 0.7, 0.15}, {0.1, 0.25, 0.65}},
                                {{0.8, 0.15, 0.05}, {0.1, 0.8, 0.1}, {0.05, 0.2, 0.75}},
                                8);
    const aide::SymbolSequence obs{0, 0, 1, 1, 2, 2, 1, 0};
    const aide::Model<aide::StateSequence> posed = aide::make_hmm_model(hmm, obs);
    const auto gold = aide::make_exact_posterior_algorithm(posed);
    const auto target = aide::make_smc_algorithm(
        aide::hmm_smc_spec(hmm, obs, 100, aide::HmmProposal::prior));
    aide::AideConfig cfg;
    cfg.n_gold = 400;
    cfg.n_target = 400;
    cfg.m_target = 10;
    aide::AideEstimate serial_est, parallel_est;
    const double serial_s =
        time_seconds([&] { serial_est = aide::aide(gold, target, cfg, 1); });
    const double parallel_s = time_seconds(
        [&] { parallel_est = aide::aide(gold, target, cfg, threads); });
    report("aide / hmm particle filter", serial_s, parallel_s, threads,
           serial_est.estimate == parallel_est.estimate);
  }

  {
    const aide::Gaussian1dProblem problem = aide::make_gaussian_1d_problem();
    const aide::AisSettings<double> settings =
        aide::gaussian_ais_settings(problem, 100, 0.8);
    const auto gold = aide::make_exact_posterior_algorithm(problem.model);
    const auto target = aide::make_ais_algorithm(settings);
    aide::AideConfig cfg;
    cfg.n_gold = 2000;
    cfg.n_target = 2000;
    aide::AideEstimate serial_est, parallel_est;
    const double serial_s =
        time_seconds([&] { serial_est = aide::aide(gold, target, cfg, 1); });
    const double parallel_s = time_seconds(
        [&] { parallel_est = aide::aide(gold, target, cfg, threads); });
    report("aide / annealed chain", serial_s, parallel_s, threads,
           serial_est.estimate == parallel_est.estimate);
  }

  return 0;
}
