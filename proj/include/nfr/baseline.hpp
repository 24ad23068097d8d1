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

#ifndef NFR_BASELINE_HPP_
#define NFR_BASELINE_HPP_

#include <iosfwd>
#include <vector>

#include "nfr/types.hpp"

namespace nfr {

struct BsrResult {
  RecommendationPolicy policy;  // 0/1 rows, exactly N ones each
  std::vector<double> q_max;    // sum of the N selected scores per row
};

// Deterministic top-N policy: row i puts 1 on the N largest u_ij (ties by
// lower index, diagonal excluded). Rows with fewer than N positive scores
// still select N items, padding with zero-score ones.
BsrResult build_bsr(const RelevanceMatrix& relevance, int n_rec);

// The baseline reference point every optimized program is measured against.
struct BaselineProfile {
  RecommendationPolicy policy;
  std::vector<double> q_max;
  DemandDistribution demand_bs;
  double entropy_bs = 0.0;
  double cost_bs = 0.0;
};

BaselineProfile build_baseline_profile(const RelevanceMatrix& relevance, int n_rec,
                                       const DemandDistribution& p0, double alpha,
                                       const CostVector& costs);

// CSV of (i, q_max_i, p_bs_i) plus a trailing summary comment line.
void write_profile_csv(const BaselineProfile& profile, std::ostream& out);

}  // namespace nfr

#endif  // NFR_BASELINE_HPP_
