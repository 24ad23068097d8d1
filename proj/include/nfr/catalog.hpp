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

#ifndef NFR_CATALOG_HPP_
#define NFR_CATALOG_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "nfr/types.hpp"

namespace nfr {

// Reads a relevance matrix from CSV. Two layouts are accepted: a headerless
// K x K dense grid, or a sparse triplet file with header "i,j,u" and 1-based
// indices. Entries below `threshold` are zeroed and the diagonal is forced
// to zero, so scores never land in the open interval (0, threshold).
RelevanceMatrix load_relevance(const std::string& path, double threshold = 0.5);
RelevanceMatrix parse_relevance_csv(std::istream& in, double threshold,
                                    const std::string& origin);

// Same zeroing rule applied to an in-memory matrix; load_relevance composes
// parsing with this, and applying it twice is a no-op.
RelevanceMatrix preprocess_relevance(RelevanceMatrix m, double threshold);

void write_relevance_csv(const RelevanceMatrix& m, std::ostream& out);

// Reproducible synthetic catalog: each off-diagonal score is 0 with
// probability 1-density, otherwise uniform in [0.5, 1); rows with no nonzero
// score are redrawn.
RelevanceMatrix synth_relevance(int k, double density, std::uint64_t seed);

// Direct demand p0_i proportional to i^(-pop), i = 1..K.
DemandDistribution zipf_direct_demand(int k, double pop);

enum class CostMode { binary, custom };

// Binary mode: the C items of highest baseline demand cost 0 (ties broken by
// lower index), the rest cost 1. Custom mode passes `custom` through after
// validation.
CostVector build_costs(const DemandDistribution& demand_bs, int cache_size,
                       CostMode mode = CostMode::binary,
                       const CostVector* custom = nullptr);

}  // namespace nfr

#endif  // NFR_CATALOG_HPP_
