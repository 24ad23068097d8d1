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

#ifndef NFR_DEMAND_HPP_
#define NFR_DEMAND_HPP_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "nfr/types.hpp"

namespace nfr {

// Long-term demand induced by direct demand p0, follow probability alpha and
// policy R: (1-alpha) * p0^T * (I - (alpha/N) R)^(-1), solved by dense LU.
// The result is a probability distribution because R rows sum to N.
DemandDistribution stationary_demand(const DemandDistribution& p0,
                                     const RecommendationPolicy& policy,
                                     double alpha, int n_rec);

// c^T p.
double expected_cost(const DemandDistribution& p, const CostVector& c);

// -sum p_i ln p_i with 0 ln 0 = 0. Natural log throughout; every consumer
// uses entropies as ratios, so the base cancels.
double entropy_of_demand(const DemandDistribution& p);

// -sum_j r_ij ln r_ij for row i of the policy.
double entropy_of_policy_row(const RecommendationPolicy& policy, int item);

struct SimulationOptions {
  // Draw the next item from the row marginals r_ij/N directly (default), or
  // materialize an N-item list by systematic sampling and pick uniformly.
  // Both give identical demand marginals; list mode exists for trace display.
  bool materialize_lists = false;
  bool record_traces = false;
};

struct SimulationResult {
  DemandDistribution empirical;
  double mean_cost = 0.0;
  long long total_steps = 0;
  std::vector<SessionTrace> traces;  // filled only when record_traces
};

// Monte-Carlo user sessions: the first item of each session is drawn from
// p0; every later step follows a recommendation with probability alpha and
// falls back to p0 otherwise. Each session owns its random stream derived
// from (seed, session index), so aggregates are reproducible.
SimulationResult simulate_sessions(const DemandDistribution& p0,
                                   const RecommendationPolicy& policy,
                                   double alpha, int n_rec, int session_len,
                                   long long sessions, std::uint64_t seed,
                                   const CostVector& costs,
                                   const SimulationOptions& options = {});

// CSV dump: session,step,item,followed,cost (1-based items).
void write_trace_csv(const SimulationResult& result, const CostVector& costs,
                     std::ostream& out);

}  // namespace nfr

#endif  // NFR_DEMAND_HPP_
