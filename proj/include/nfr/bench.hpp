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

#ifndef NFR_BENCH_HPP_
#define NFR_BENCH_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "nfr/optimizer.hpp"
#include "nfr/types.hpp"

namespace nfr {

// Everything a scenario run needs, built once so the baseline demand feeds
// both the cache placement and the entropy reference without recomputation
// drift.
struct ProblemInstance {
  ScenarioConfig cfg;
  RelevanceMatrix relevance;
  DemandDistribution p0;
  CostVector costs;
  BaselineProfile profile;
};

ProblemInstance make_instance(const ScenarioConfig& cfg, RelevanceMatrix relevance);
// Synthesizes the relevance matrix from (cfg.k, density, cfg.seed).
ProblemInstance make_synthetic_instance(const ScenarioConfig& cfg, double density = 0.25);

struct SweepRow {
  std::string scenario_id;
  std::string algorithm;  // BSR | NFR | Diverse(b) | Fair(kind,cf) | FairDiverse(kind,b,cf)
  double b = 0.0;
  double c_f = 0.0;
  double cost = 0.0;
  double cost_pct = 0.0;  // 100 * cost / BSR cost (100 when the BSR cost is 0)
  double entropy = 0.0;
  double entropy_pct = 0.0;
  double entropy_gap = 0.0;
  long iterations = 0;
  std::string status;       // ok | invalid | solver status
  double solve_seconds = 0.0;  // kept out of the deterministic CSV
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

struct SweepRequest {
  std::vector<double> b_list;        // Diverse points
  std::vector<double> cf_list;       // Fair points, b = 0
  std::vector<FairnessKind> kinds;   // fairness kinds for Fair/FairDiverse rows
  bool fair_diverse = false;         // also run the (kind, b, cf) grid
};

// BSR and plain-program rows always run; Diverse rows per requested b;
// fairness rows per (kind, cf). Solver failures flag the row and the sweep
// continues; every optimal row is re-validated from its recovered policy
// before being accepted.
SweepResult run_scenario(const ScenarioConfig& cfg, const RelevanceMatrix& relevance,
                         const SweepRequest& request);

// Fair vs Diverse vs Fair-Diverse trade-off rows on one instance.
SweepResult compare_fairness(const ScenarioConfig& cfg, const RelevanceMatrix& relevance,
                             const std::vector<double>& b_list,
                             const std::vector<double>& cf_list,
                             const std::vector<FairnessKind>& kinds);

// Plot data: cost_pct,entropy_pct,tag ordered plain-program row first, then
// Diverse rows by ascending b, then the BSR point (100,100).
std::string tradeoff_curve_csv(const SweepResult& result);

void write_sweep_csv(const SweepResult& result, std::ostream& out);
void write_timings_csv(const SweepResult& result, std::ostream& out);
SweepResult read_sweep_csv(std::istream& in);

// Fixed-width text table of per-algorithm cost/entropy and their shares of
// the baseline values.
std::string render_report_table(const SweepResult& result);

// Frozen synthetic K=30 scenarios used by the test-bench and demos.
std::vector<ScenarioConfig> bundled_scenarios();

}  // namespace nfr

#endif  // NFR_BENCH_HPP_
