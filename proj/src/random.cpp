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

#include "aide/random.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aide {

RandomStream::RandomStream(std::uint64_t seed) : engine_(seed) {}

RandomStream RandomStream::from_key(std::uint64_t master_seed,
                                    std::initializer_list<std::uint64_t> path) {
  // seed_seq entries are 32-bit; split every 64-bit key word in two.
  std::vector<std::uint32_t> words;
  words.reserve(2 * (1 + path.size()));
  auto push = [&words](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(master_seed);
  for (std::uint64_t p : path) push(p);
  std::seed_seq seq(words.begin(), words.end());
  RandomStream out(0);
  out.engine_.seed(seq);
  return out;
}

std::uint64_t derive_seed(std::uint64_t master_seed,
                          std::initializer_list<std::uint64_t> path) {
  std::vector<std::uint32_t> words;
  words.reserve(2 * (1 + path.size()));
  auto push = [&words](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(master_seed);
  for (std::uint64_t p : path) push(p);
  std::seed_seq seq(words.begin(), words.end());
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

int RandomStream::uniform_int(int n) {
  if (n < 1) throw std::invalid_argument("uniform_int: n must be >= 1");
  if (n == 1) return 0;
  const int k = static_cast<int>(uniform() * static_cast<double>(n));
  return k < n ? k : n - 1;
}

int RandomStream::categorical(std::span<const double> probs) {
  if (probs.empty()) throw std::invalid_argument("categorical: empty vector");
  if (probs.size() == 1) return 0;
  const double u = uniform();
  double cum = 0.0;
  int last_positive = -1;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) last_positive = static_cast<int>(i);
    cum += probs[i];
    if (u < cum) return static_cast<int>(i);
  }
  // Total mass fell short of u by rounding; return last viable index.
  if (last_positive < 0)
    throw std::invalid_argument("categorical: all probabilities are zero");
  return last_positive;
}

}  // namespace aide
