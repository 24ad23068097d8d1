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

#ifndef NFR_TYPES_HPP_
#define NFR_TYPES_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace nfr {

// K x K relevance scores u_ij in [0,1], zero diagonal. Row-major.
struct RelevanceMatrix {
  int k = 0;
  std::vector<double> scores;

  double at(int i, int j) const { return scores[static_cast<std::size_t>(i) * k + j]; }
  double& at(int i, int j) { return scores[static_cast<std::size_t>(i) * k + j]; }

  // Checks shape, range, and the zero diagonal; throws on violation.
  void validate() const;
};

// Per-item delivery cost, each entry in [0,1]; 0/1 in the binary model.
struct CostVector {
  std::vector<double> costs;

  int size() const { return static_cast<int>(costs.size()); }
  void validate() const;
};

// Length-K probability vector (p0, p^BS, or p^NF).
struct DemandDistribution {
  std::vector<double> probs;

  int size() const { return static_cast<int>(probs.size()); }
  // Entries >= 0 and sum within `sum_tol` of 1.
  void validate(double sum_tol = 1e-9) const;
};

// K x K row table r_ij in [0,1]; zero diagonal; each row sums to the number
// of recommendation slots. Row-major.
struct RecommendationPolicy {
  int k = 0;
  std::vector<double> rows;

  double at(int i, int j) const { return rows[static_cast<std::size_t>(i) * k + j]; }
  double& at(int i, int j) { return rows[static_cast<std::size_t>(i) * k + j]; }

  void validate(int n_rec, double row_tol = 1e-6) const;
};

// One simulated user session: visited items plus whether each step followed a
// recommendation (the first step never does).
struct SessionTrace {
  std::vector<int> items;
  std::vector<char> followed;
};

enum class FairnessKind { none, max, tv, kl };
enum class CutMode { tangent, secant };

const char* to_string(FairnessKind kind);
const char* to_string(CutMode mode);
FairnessKind fairness_kind_from_string(const std::string& text);
CutMode cut_mode_from_string(const std::string& text);

// One scenario: catalog/recommender/cache/user parameters plus the knobs of
// the diverse and fair programs.
struct ScenarioConfig {
  int k = 0;            // catalog size
  int n_rec = 0;        // recommendation slots per item
  int cache_size = 0;   // items with zero cost in the binary model
  int session_len = 40;
  int m_cuts = 100;     // entropy cut count
  double alpha = 0.8;   // probability a user follows a recommendation
  double pop = 1.0;     // Zipf exponent of direct demand
  double q = 0.8;       // per-item quality floor as a fraction of q_i^max
  double b = 0.8;       // entropy floor as a fraction of the baseline entropy
  double c_f = 0.1;     // fairness budget
  FairnessKind fairness = FairnessKind::none;
  std::uint64_t seed = 1;
  CutMode cut_mode = CutMode::tangent;

  void validate() const;
  // Canonical short id used in sweep rows, e.g. "K30N2C5a0.80p1.00q0.80s7".
  std::string id() const;
};

// Flat key=value scenario file; keys: K,N,C,L,alpha,pop,q,b,cf,fairness,seed,
// M,cut_mode. Missing keys keep defaults; unknown keys are rejected.
ScenarioConfig parse_scenario_text(const std::string& text);
ScenarioConfig load_scenario_file(const std::string& path);
std::string scenario_to_text(const ScenarioConfig& cfg);

}  // namespace nfr

#endif  // NFR_TYPES_HPP_
