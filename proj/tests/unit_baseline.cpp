// Copyright 2026 the nfropt authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "nfr/baseline.hpp"
#include "nfr/catalog.hpp"
#include "nfr/demand.hpp"
#include "nfr/errors.hpp"
#include "nfr/rng.hpp"

using namespace nfr;

namespace {

RelevanceMatrix matrix_from_rows(int k, std::vector<double> values) {
  RelevanceMatrix m;
  m.k = k;
  m.scores = std::move(values);
  return m;
}

}  // namespace

TEST_CASE("top-N selection by hand") {
  RelevanceMatrix m = matrix_from_rows(4, {0, 0.9, 0.7, 0.6,  //
                                           0.9, 0, 0.7, 0.6,  //
                                           0, 0, 0, 0,        //
                                           0, 0.8, 0.8, 0});
  BsrResult bsr = build_bsr(m, 2);
  // Row 0: items 2 and 3 (1-based), quality 1.6.
  CHECK(bsr.policy.at(0, 1) == 1.0);
  CHECK(bsr.policy.at(0, 2) == 1.0);
  CHECK(bsr.policy.at(0, 3) == 0.0);
  CHECK(bsr.q_max[0] == doctest::Approx(1.6).epsilon(1e-15));
  // Row 2 is all zeros: the two lowest non-diagonal indices win, quality 0.
  CHECK(bsr.policy.at(2, 0) == 1.0);
  CHECK(bsr.policy.at(2, 1) == 1.0);
  CHECK(bsr.q_max[2] == 0.0);
  // Row 3 ties 0.8/0.8 at items 2,3 (1-based): both selected.
  CHECK(bsr.policy.at(3, 1) == 1.0);
  CHECK(bsr.policy.at(3, 2) == 1.0);
  CHECK(bsr.q_max[3] == doctest::Approx(1.6).epsilon(1e-15));

  for (int i = 0; i < 4; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < 4; ++j) row_sum += bsr.policy.at(i, j);
    CHECK(row_sum == 2.0);
    CHECK(entropy_of_policy_row(bsr.policy, i) == 0.0);
  }
}

TEST_CASE("catalog too small for N") {
  RelevanceMatrix m = matrix_from_rows(2, {0, 0.5, 0.5, 0});
  CHECK_THROWS_AS(build_bsr(m, 2), ConfigError);
}

TEST_CASE("no N-subset beats the selected quality (exhaustive)") {
  Rng rng(404);
  for (int trial = 0; trial < 500; ++trial) {
    int k = 4 + static_cast<int>(rng.next_below(9));  // K <= 12
    int n_rec = 1 + static_cast<int>(rng.next_below(3));
    if (n_rec > k - 1) n_rec = k - 1;
    RelevanceMatrix m = synth_relevance(k, 0.35 + 0.6 * rng.next_double(),
                                        rng.next_u64());
    BsrResult bsr = build_bsr(m, n_rec);
    int row = static_cast<int>(rng.next_below(k));
    // Enumerate every N-subset of the off-diagonal columns.
    std::vector<int> cols;
    for (int j = 0; j < k; ++j)
      if (j != row) cols.push_back(j);
    std::vector<int> pick(n_rec);
    for (int i = 0; i < n_rec; ++i) pick[i] = i;
    double best = 0.0;
    while (true) {
      double sum = 0.0;
      for (int i : pick) sum += m.at(row, cols[i]);
      best = std::max(best, sum);
      int i = n_rec - 1;
      while (i >= 0 && pick[i] == static_cast<int>(cols.size()) - n_rec + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < n_rec; ++j) pick[j] = pick[j - 1] + 1;
    }
    CHECK(bsr.q_max[row] == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("two-item profile by hand") {
  RelevanceMatrix m = matrix_from_rows(2, {0, 1, 1, 0});
  DemandDistribution p0;
  p0.probs = {1.0, 0.0};
  CostVector costs;
  costs.costs = {0.0, 1.0};
  BaselineProfile profile = build_baseline_profile(m, 1, p0, 0.5, costs);
  CHECK(profile.demand_bs.probs[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(profile.demand_bs.probs[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(profile.cost_bs == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("tiny follow probability keeps demand near p0") {
  RelevanceMatrix m = synth_relevance(10, 0.6, 3);
  DemandDistribution p0 = zipf_direct_demand(10, 1.0);
  CostVector costs;
  costs.costs.assign(10, 1.0);
  costs.costs[0] = 0.0;
  BaselineProfile profile = build_baseline_profile(m, 2, p0, 0.001, costs);
  double direct_cost = expected_cost(p0, costs);
  CHECK(std::abs(profile.cost_bs - direct_cost) <= 0.01);
  for (int i = 0; i < 10; ++i)
    CHECK(std::abs(profile.demand_bs.probs[i] - p0.probs[i]) <= 0.01);
}

TEST_CASE("profile scalars reproduce bit-for-bit from the stored demand") {
  RelevanceMatrix m = synth_relevance(15, 0.4, 12);
  DemandDistribution p0 = zipf_direct_demand(15, 0.7);
  CostVector costs;
  costs.costs.assign(15, 1.0);
  costs.costs[3] = 0.0;
  costs.costs[7] = 0.0;
  BaselineProfile profile = build_baseline_profile(m, 2, p0, 0.85, costs);
  CHECK(profile.entropy_bs == entropy_of_demand(profile.demand_bs));
  CHECK(profile.cost_bs == expected_cost(profile.demand_bs, costs));
}

TEST_CASE("profile dump carries the table and the summary") {
  RelevanceMatrix m = matrix_from_rows(2, {0, 1, 1, 0});
  DemandDistribution p0;
  p0.probs = {1.0, 0.0};
  CostVector costs;
  costs.costs = {0.0, 1.0};
  BaselineProfile profile = build_baseline_profile(m, 1, p0, 0.5, costs);
  std::ostringstream out;
  write_profile_csv(profile, out);
  std::string text = out.str();
  CHECK(text.rfind("i,q_max,p_bs\n", 0) == 0);
  CHECK(text.find("# cost_bs=") != std::string::npos);
  CHECK(text.find("entropy_bs=") != std::string::npos);
}
