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

#ifndef AIDE_RANDOM_HPP
#define AIDE_RANDOM_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace aide {

/// A seedable random stream with a fixed, documented draw discipline.
///
/// Every sampler in this library consumes randomness through the methods
/// below, so that two algorithms which are mathematically the same special
/// case (e.g. single-particle SMC and AIS) consume identical draw sequences
/// and produce bit-identical outputs when run from equal streams.
///
/// Draw contract:
///   - uniform()      consumes one engine output
///   - normal()       consumes two engine outputs (Box-Muller, no caching)
///   - uniform_int(n) consumes one uniform, except n <= 1 which consumes none
///   - categorical(p) consumes one uniform, except p.size() == 1 which
///     consumes none
///
/// The "single outcome consumes nothing" rule is what makes the P = 1
/// special cases collapse exactly.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  /// Derives an independent stream from a master seed and a path of
  /// integers (e.g. {run_kind, run_index}). Same key, same stream.
  static RandomStream from_key(std::uint64_t master_seed,
                               std::initializer_list<std::uint64_t> path);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Standard normal via Box-Muller. One value per call, no caching.
  double normal();

  /// Uniform integer in {0, ..., n-1}. Requires n >= 1.
  int uniform_int(int n);

  /// Inverse-CDF draw from a normalized probability vector, using strict
  /// cumulative comparison so zero-probability entries are never selected.
  int categorical(std::span<const double> probs);

 private:
  std::mt19937_64 engine_;
};

/// Deterministically mixes a master seed with a path of integers into a new
/// 64-bit seed. Used to give every grid cell of an experiment its own
/// reproducible seed.
std::uint64_t derive_seed(std::uint64_t master_seed,
                          std::initializer_list<std::uint64_t> path);

}  // namespace aide

#endif  // AIDE_RANDOM_HPP
