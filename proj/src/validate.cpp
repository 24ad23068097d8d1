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

#include <cmath>
#include <string>

#include "nfr/demand.hpp"
#include "nfr/errors.hpp"
#include "nfr/optimizer.hpp"

namespace nfr {

namespace {

constexpr double kDemandTvTol = 1e-6;
constexpr double kQualityTol = 1e-6;
constexpr double kCostRouteTol = 1e-8;
constexpr double kEntropyTol = 1e-7;
constexpr double kFairnessTol = 1e-6;

}  // namespace

ValidationReport validate_solution(const DiverseSolution& sol,
                                   const RelevanceMatrix& relevance,
                                   const BaselineProfile& profile,
                                   const ScenarioConfig& cfg, const CostVector& costs,
                                   const DemandDistribution& p0,
                                   const FairnessSpec* fairness) {
  ValidationReport report;
  if (sol.report.status != SolveStatus::optimal) {
    report.violations.push_back(std::string("solver status ") +
                                to_string(sol.report.status));
    return report;
  }
  const int k = sol.k;
  if (relevance.k != k || profile.policy.k != k || costs.size() != k || p0.size() != k)
    throw ShapeError("validate_solution: dimension mismatch");

  try {
    sol.policy.validate(cfg.n_rec);
  } catch (const std::exception& e) {
    report.violations.push_back(std::string("policy invariant: ") + e.what());
  }

  // Demand must be reproducible from the recovered policy alone.
  DemandDistribution demand_check =
      stationary_demand(p0, sol.policy, cfg.alpha, cfg.n_rec);
  report.demand_tv = fairness_tv(demand_check, sol.p_nf);
  if (report.demand_tv > kDemandTvTol)
    report.violations.push_back("demand balance: recomputed stationary demand differs");

  // Per-row quality against the baseline ceiling.
  report.min_quality_slack = kLpInfinity;
  for (int i = 0; i < k; ++i) {
    double achieved = 0.0;
    for (int j = 0; j < k; ++j) achieved += sol.policy.at(i, j) * relevance.at(i, j);
    double slack = achieved - cfg.q * profile.q_max[i];
    report.min_quality_slack = std::min(report.min_quality_slack, slack);
  }
  if (report.min_quality_slack < -kQualityTol)
    report.violations.push_back("quality floor: a row falls below q * q_max");

  // Session-cost route: demand from the policy, then the cost inner product.
  double cost_route = expected_cost(demand_check, costs);
  report.cost_route_mismatch = std::abs(cost_route - sol.cost);
  if (report.cost_route_mismatch > kCostRouteTol)
    report.violations.push_back("cost route: session-cost recomputation differs");

  report.realized_entropy = entropy_of_demand(sol.p_nf);
  report.entropy_floor = cfg.b * profile.entropy_bs;
  if (!sol.d.empty()) {
    if (cfg.cut_mode == CutMode::tangent) {
      // Tangent cuts relax the constraint: the program certifies only the
      // claimed surrogate, so that is what must clear the floor.
      if (sol.claimed_entropy < report.entropy_floor - kEntropyTol)
        report.violations.push_back("entropy floor: claimed entropy below b*H(p_bs)");
    } else {
      if (report.realized_entropy < report.entropy_floor - kEntropyTol)
        report.violations.push_back("entropy floor: realized entropy below b*H(p_bs)");
    }
  }

  report.f_max = fairness_max(sol.p_nf, profile.demand_bs);
  report.f_tv = fairness_tv(sol.p_nf, profile.demand_bs);
  report.f_kl = fairness_kl(profile.demand_bs, sol.p_nf);
  if (fairness != nullptr) {
    // The max rows are exact and the tv budget bounds sum |p - p_bs|; the kl
    // block is itself a relaxation, so its metric is reported, not enforced.
    if (fairness->kind == FairnessKind::max && report.f_max > fairness->c_f + kFairnessTol)
      report.violations.push_back("fairness: max deviation exceeds cf");
    if (fairness->kind == FairnessKind::tv && 2.0 * report.f_tv > fairness->c_f + kFairnessTol)
      report.violations.push_back("fairness: total variation budget exceeded");
  }

  report.ok = report.violations.empty();
  return report;
}

}  // namespace nfr
