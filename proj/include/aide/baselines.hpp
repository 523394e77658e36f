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

#ifndef AIDE_BASELINES_HPP
#define AIDE_BASELINES_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "aide/aide.hpp"
#include "aide/algorithm.hpp"

namespace aide {

/// Scalar function of a latent sample whose expectation is compared across
/// algorithms as a heuristic accuracy diagnostic.
template <typename X>
using ProbeFunction = std::function<double(const X&)>;

/// Side-by-side summary produced by the baseline diagnostics.
struct DiagnosticReport {
  double gold_value = 0.0;
  double target_value = 0.0;
  double gold_se = 0.0;
  double target_se = 0.0;
  int n_runs = 0;

  std::string csv_header() const;
  std::string csv_row() const;
};

namespace detail {
inline std::uint64_t kLmlGold = 2;
inline std::uint64_t kLmlTarget = 3;
inline std::uint64_t kProbe = 4;
}  // namespace detail

/// Mean log evidence estimate of each algorithm over n runs. Both
/// algorithms must expose per-run evidence estimates (the SMC/AIS family).
template <typename X>
DiagnosticReport lml_compare(const InferenceAlgorithm<X>& gold,
                             const InferenceAlgorithm<X>& target, int n,
                             std::uint64_t seed, int threads = 1) {
  if (n < 1) throw std::invalid_argument("lml_compare: n must be >= 1");
  std::vector<double> gold_lml(n), target_lml(n);
  run_indexed(n, threads, [&](int i) {
    RandomStream rng = RandomStream::from_key(
        seed, {detail::kLmlGold, static_cast<std::uint64_t>(i)});
    const RunOutput<X> run = gold.simulate(rng);
    if (!run.log_ml)
      throw UnsupportedAlgorithmError(
          "lml_compare: gold algorithm reports no evidence estimate");
    gold_lml[i] = *run.log_ml;
  });
  run_indexed(n, threads, [&](int i) {
    RandomStream rng = RandomStream::from_key(
        seed, {detail::kLmlTarget, static_cast<std::uint64_t>(i)});
    const RunOutput<X> run = target.simulate(rng);
    if (!run.log_ml)
      throw UnsupportedAlgorithmError(
          "lml_compare: target algorithm reports no evidence estimate");
    target_lml[i] = *run.log_ml;
  });
  DiagnosticReport report;
  report.gold_value = mean(gold_lml);
  report.target_value = mean(target_lml);
  report.gold_se = standard_error(gold_lml);
  report.target_se = standard_error(target_lml);
  report.n_runs = n;
  return report;
}

/// Sample mean and standard error of a probe function over n independent
/// runs of one algorithm.
template <typename X, typename Probe>
std::pair<double, double> probe_expectation(const InferenceAlgorithm<X>& alg,
                                            Probe&& probe, int n,
                                            std::uint64_t seed,
                                            int threads = 1) {
  if (n < 2) throw std::invalid_argument("probe_expectation: n must be >= 2");
  std::vector<double> values(n);
  run_indexed(n, threads, [&](int i) {
    RandomStream rng = RandomStream::from_key(
        seed, {detail::kProbe, static_cast<std::uint64_t>(i)});
    values[i] = probe(alg.simulate(rng).output);
  });
  return {mean(values), standard_error(values)};
}

}  // namespace aide

#endif  // AIDE_BASELINES_HPP
