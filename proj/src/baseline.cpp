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

#include "nfr/baseline.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "nfr/demand.hpp"
#include "nfr/errors.hpp"

namespace nfr {

BsrResult build_bsr(const RelevanceMatrix& relevance, int n_rec) {
  const int k = relevance.k;
  if (n_rec < 1) throw ConfigError("build_bsr: N must be positive");
  if (k - 1 < n_rec)
    throw ConfigError("build_bsr: catalog too small, need K-1 >= N");

  BsrResult out;
  out.policy.k = k;
  out.policy.rows.assign(static_cast<std::size_t>(k) * k, 0.0);
  out.q_max.assign(k, 0.0);

  std::vector<int> candidates;
  candidates.reserve(k - 1);
  for (int i = 0; i < k; ++i) {
    candidates.clear();
    for (int j = 0; j < k; ++j)
      if (j != i) candidates.push_back(j);
    std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
      double ua = relevance.at(i, a), ub = relevance.at(i, b);
      if (ua != ub) return ua > ub;
      return a < b;
    });
    candidates.resize(n_rec);
    std::sort(candidates.begin(), candidates.end());
    double quality = 0.0;
    for (int j : candidates) {
      out.policy.at(i, j) = 1.0;
      quality += relevance.at(i, j);
    }
    out.q_max[i] = quality;
  }
  return out;
}

BaselineProfile build_baseline_profile(const RelevanceMatrix& relevance, int n_rec,
                                       const DemandDistribution& p0, double alpha,
                                       const CostVector& costs) {
  if (relevance.k != p0.size() || relevance.k != costs.size())
    throw ShapeError("build_baseline_profile: dimension mismatch");
  BsrResult bsr = build_bsr(relevance, n_rec);
  BaselineProfile profile;
  profile.policy = std::move(bsr.policy);
  profile.q_max = std::move(bsr.q_max);
  profile.demand_bs = stationary_demand(p0, profile.policy, alpha, n_rec);
  profile.entropy_bs = entropy_of_demand(profile.demand_bs);
  profile.cost_bs = expected_cost(profile.demand_bs, costs);
  return profile;
}

void write_profile_csv(const BaselineProfile& profile, std::ostream& out) {
  out << "i,q_max,p_bs\n";
  char buf[96];
  for (int i = 0; i < profile.policy.k; ++i) {
    std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g\n", i + 1, profile.q_max[i],
                  profile.demand_bs.probs[i]);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf), "# cost_bs=%.12g entropy_bs=%.12g\n",
                profile.cost_bs, profile.entropy_bs);
  out << buf;
}

}  // namespace nfr
