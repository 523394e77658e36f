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

#include "aide/kernels.hpp"

#include <doctest.h>

#include <cmath>

#include "aide/errors.hpp"
#include "aide/oracle.hpp"
#include "aide/random.hpp"

using namespace aide;

namespace {

// Five-point target and +/-1 random-walk proposal shared by the MH tests.
const std::vector<double> kTarget{0.35, 0.05, 0.3, 0.1, 0.2};

std::vector<std::vector<double>> walk_proposal_matrix() {
  std::vector<std::vector<double>> proposal(5, std::vector<double>(5, 0.0));
  for (int i = 0; i < 5; ++i) {
    if (i > 0) proposal[i][i - 1] = 0.5;
    if (i < 4) proposal[i][i + 1] = 0.5;
    if (i == 0 || i == 4) proposal[i][i] = 0.5;
  }
  return proposal;
}

UnnormalizedTarget<int> five_point_target() {
  return UnnormalizedTarget<int>{
      [](const int& x) { return std::log(kTarget[x]); }};
}

MarkovKernel<int> walk_proposal() {
  const auto rows = walk_proposal_matrix();
  MarkovKernel<int> kernel;
  kernel.sample = [rows](const int& x, RandomStream& rng) {
    return rng.categorical(rows[x]);
  };
  // Symmetric proposal: density deliberately omitted.
  return kernel;
}

}  // namespace

TEST_CASE("mh_step with an identity proposal never moves") {
  MarkovKernel<int> identity;
  identity.sample = [](const int& x, RandomStream&) { return x; };
  RandomStream rng(1);
  for (int i = 0; i < 100; ++i)
    CHECK(mh_step(five_point_target(), identity, 2, rng) == 2);
}

TEST_CASE("mh_step always accepts uphill moves under a symmetric proposal") {
  // Deterministic proposal to the highest-probability point.
  MarkovKernel<int> uphill;
  uphill.sample = [](const int&, RandomStream&) { return 0; };
  RandomStream rng(2);
  for (int i = 0; i < 100; ++i)
    CHECK(mh_step(five_point_target(), uphill, 1, rng) == 0);
}

TEST_CASE("mh_step from a zero-density state is an error") {
  UnnormalizedTarget<int> target{[](const int& x) {
    return x == 0 ? 0.0 : kNegInf;
  }};
  RandomStream rng(3);
  CHECK_THROWS_AS(mh_step(target, walk_proposal(), 1, rng), InvalidStateError);
}

TEST_CASE("empirical mh transition frequencies match the analytic matrix") {
  const auto exact = oracle::mh_transition_matrix(kTarget, walk_proposal_matrix());
  const UnnormalizedTarget<int> target = five_point_target();
  const MarkovKernel<int> proposal = walk_proposal();

  std::vector<std::vector<long long>> counts(5, std::vector<long long>(5, 0));
  std::vector<long long> visits(5, 0);
  RandomStream rng(101);
  int state = 0;
  const int steps = 1000000;
  for (int i = 0; i < steps; ++i) {
    const int next = mh_step(target, proposal, state, rng);
    counts[state][next] += 1;
    visits[state] += 1;
    state = next;
  }
  for (int i = 0; i < 5; ++i) {
    REQUIRE(visits[i] > 0);
    for (int j = 0; j < 5; ++j) {
      const double freq =
          static_cast<double>(counts[i][j]) / static_cast<double>(visits[i]);
      CHECK(std::abs(freq - exact[i][j]) < 0.005);
    }
  }
}

TEST_CASE("analytic mh matrix is reversible and leaves the target invariant") {
  const auto exact = oracle::mh_transition_matrix(kTarget, walk_proposal_matrix());
  double worst_db = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      worst_db = std::max(worst_db, std::abs(kTarget[i] * exact[i][j] -
                                             kTarget[j] * exact[j][i]));
  CHECK(worst_db < 1e-10);

  const auto evolved = oracle::chain_distribution(kTarget, exact, 1);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(evolved[i] - kTarget[i]) < 1e-10);
}

TEST_CASE("geometric_anneal endpoints reproduce the inputs bitwise") {
  UnnormalizedTarget<double> start{[](const double& x) { return -x * x; }};
  UnnormalizedTarget<double> end{[](const double& x) { return -2.0 * (x - 1.0) * (x - 1.0); }};
  const auto at0 = geometric_anneal(start, end, 0.0);
  const auto at1 = geometric_anneal(start, end, 1.0);
  for (double x : {-1.0, 0.0, 0.4, 2.5}) {
    CHECK(at0.log_density(x) == start.log_density(x));
    CHECK(at1.log_density(x) == end.log_density(x));
  }
  CHECK_THROWS_AS(geometric_anneal(start, end, 1.5), std::invalid_argument);
}

TEST_CASE("geometric bridge of two gaussians recovers the completed square") {
  // N(0,1) and N(2,1) at beta = 1/2 blend to an unnormalized N(1,1).
  UnnormalizedTarget<double> start{[](const double& x) { return -0.5 * x * x; }};
  UnnormalizedTarget<double> end{
      [](const double& x) { return -0.5 * (x - 2.0) * (x - 2.0); }};
  const auto mid = geometric_anneal(start, end, 0.5);
  RandomStream rng(7);
  for (int i = 0; i < 50; ++i) {
    const double x = 6.0 * (rng.uniform() - 0.5);
    // (1-b) x^2/2 + b (x-2)^2/2 at b = 1/2 completes to ((x-1)^2 + 1)/2.
    const double expected = -0.5 * (x - 1.0) * (x - 1.0) - 0.5;
    CHECK(std::abs(mid.log_density(x) - expected) < 1e-12);
  }
}

TEST_CASE("schedules validate their endpoint") {
  UnnormalizedTarget<double> start{[](const double& x) { return -x * x; }};
  UnnormalizedTarget<double> end{[](const double& x) { return -(x - 1.0) * (x - 1.0); }};
  const auto schedule = geometric_schedule(start, end, 4);
  CHECK(schedule.n_steps == 4);
  for (double x : {-0.5, 0.0, 1.5})
    CHECK(std::abs(schedule[3].log_density(x) - end.log_density(x)) < 1e-12);
  CHECK_THROWS_AS(geometric_schedule(start, end, std::vector<double>{0.5, 0.9}),
                  std::invalid_argument);
}
