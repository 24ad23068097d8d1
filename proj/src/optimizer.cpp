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

#include "nfr/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "nfr/catalog.hpp"
#include "nfr/demand.hpp"
#include "nfr/errors.hpp"
#include "nfr/linalg.hpp"

namespace nfr {

void FairnessSpec::validate() const {
  if (kind == FairnessKind::none) throw ConfigError("fairness spec: kind is none");
  if (!(c_f >= 0.0)) throw ConfigError("fairness spec: cf must be non-negative");
  if (kind == FairnessKind::kl) {
    if (!(s > 0.0)) throw ConfigError("fairness spec: kl needs a positive step");
    if (m_kl < 1) throw ConfigError("fairness spec: kl needs at least one cut");
  }
}

namespace {

void check_dimensions(const RelevanceMatrix& relevance, const BaselineProfile& profile,
                      const ScenarioConfig& cfg, const CostVector& costs) {
  cfg.validate();
  if (relevance.k != cfg.k || profile.policy.k != cfg.k || costs.size() != cfg.k)
    throw ConfigError("lp builder: dimension mismatch between inputs");
}

// Shared core of all three builders: variables F and P, objective c^T p,
// quality / row-sum / domination / balance rows.
BuiltLp build_base(const RelevanceMatrix& relevance, const BaselineProfile& profile,
                   const ScenarioConfig& cfg, const CostVector& costs) {
  check_dimensions(relevance, profile, cfg, costs);
  const int k = cfg.k;
  const DemandDistribution p0 = zipf_direct_demand(k, cfg.pop);

  BuiltLp built;
  LinearProgram& lp = built.lp;
  LpLayout& layout = built.layout;
  layout.k = k;

  layout.f_base = lp.add_block("F", k * k, 0.0, 1.0);
  for (int i = 0; i < k; ++i) lp.fix_variable(layout.f_index(i, i), 0.0);
  layout.p_base = lp.add_block("P", k, 0.0, 1.0);
  for (int i = 0; i < k; ++i)
    if (costs.costs[i] != 0.0) lp.set_objective(layout.p_base + i, costs.costs[i]);

  // Quality: sum_j f_ij u_ij - q q_i^max p_i >= 0.
  layout.quality_row = lp.num_rows();
  for (int i = 0; i < k; ++i) {
    int row = lp.add_row(Relation::ge, 0.0);
    for (int j = 0; j < k; ++j)
      if (relevance.at(i, j) != 0.0)
        lp.add_coefficient(row, layout.f_index(i, j), relevance.at(i, j));
    double quality_target = cfg.q * profile.q_max[i];
    if (quality_target != 0.0)
      lp.add_coefficient(row, layout.p_base + i, -quality_target);
  }

  // Row sum: sum_j f_ij = N p_i.
  layout.rowsum_row = lp.num_rows();
  for (int i = 0; i < k; ++i) {
    int row = lp.add_row(Relation::eq, 0.0);
    for (int j = 0; j < k; ++j) lp.add_coefficient(row, layout.f_index(i, j), 1.0);
    lp.add_coefficient(row, layout.p_base + i, -static_cast<double>(cfg.n_rec));
  }

  // Domination: f_ij <= p_i.
  layout.domination_row = lp.num_rows();
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      int row = lp.add_row(Relation::le, 0.0);
      lp.add_coefficient(row, layout.f_index(i, j), 1.0);
      lp.add_coefficient(row, layout.p_base + i, -1.0);
    }
  }

  // Demand balance: p_j - (alpha/N) sum_i f_ij = (1-alpha) p0_j. The
  // (1-alpha) factor on the right-hand side is what makes the demand block
  // a probability distribution.
  layout.balance_row = lp.num_rows();
  const double follow = cfg.alpha / cfg.n_rec;
  for (int j = 0; j < k; ++j) {
    int row = lp.add_row(Relation::eq, (1.0 - cfg.alpha) * p0.probs[j]);
    lp.add_coefficient(row, layout.p_base + j, 1.0);
    for (int i = 0; i < k; ++i)
      lp.add_coefficient(row, layout.f_index(i, j), -follow);
  }
  return built;
}

void add_entropy_block(BuiltLp& built, const BaselineProfile& profile,
                       const ScenarioConfig& cfg, const CutFamily& cuts) {
  LinearProgram& lp = built.lp;
  LpLayout& layout = built.layout;
  const int k = layout.k;

  layout.d_base = lp.add_block("D", k, -kLpInfinity, kLpInfinity);

  // Aggregate entropy row: sum_i d_i <= -b H(p^BS).
  layout.entropy_row = lp.add_row(Relation::le, -cfg.b * profile.entropy_bs);
  for (int i = 0; i < k; ++i)
    lp.add_coefficient(layout.entropy_row, layout.d_base + i, 1.0);

  // Cut rows: slope_m p_i + intercept_m <= d_i.
  layout.cut_row = lp.num_rows();
  for (int i = 0; i < k; ++i) {
    for (int m = 0; m < cuts.count; ++m) {
      int row = lp.add_row(Relation::le, -cuts.lines[m].intercept);
      lp.add_coefficient(row, layout.p_base + i, cuts.lines[m].slope);
      lp.add_coefficient(row, layout.d_base + i, -1.0);
    }
  }
}

void add_fairness_block(BuiltLp& built, const BaselineProfile& profile,
                        const FairnessSpec& fairness) {
  fairness.validate();
  LinearProgram& lp = built.lp;
  LpLayout& layout = built.layout;
  const int k = layout.k;
  const std::vector<double>& p_bs = profile.demand_bs.probs;
  layout.fairness_row = lp.num_rows();

  switch (fairness.kind) {
    case FairnessKind::max:
      // p_i^BS - c_f <= p_i <= p_i^BS + c_f.
      for (int i = 0; i < k; ++i) {
        int row = lp.add_row(Relation::ge, p_bs[i] - fairness.c_f);
        lp.add_coefficient(row, layout.p_base + i, 1.0);
      }
      for (int i = 0; i < k; ++i) {
        int row = lp.add_row(Relation::le, p_bs[i] + fairness.c_f);
        lp.add_coefficient(row, layout.p_base + i, 1.0);
      }
      break;
    case FairnessKind::tv: {
      // z_i >= |p_i - p_i^BS|, sum z_i <= c_f.
      layout.z_base = lp.add_block("Z", k, 0.0, kLpInfinity);
      for (int i = 0; i < k; ++i) {
        int row = lp.add_row(Relation::ge, p_bs[i]);
        lp.add_coefficient(row, layout.p_base + i, 1.0);
        lp.add_coefficient(row, layout.z_base + i, 1.0);
      }
      for (int i = 0; i < k; ++i) {
        int row = lp.add_row(Relation::le, p_bs[i]);
        lp.add_coefficient(row, layout.p_base + i, 1.0);
        lp.add_coefficient(row, layout.z_base + i, -1.0);
      }
      int budget = lp.add_row(Relation::le, fairness.c_f);
      for (int i = 0; i < k; ++i) lp.add_coefficient(budget, layout.z_base + i, 1.0);
      break;
    }
    case FairnessKind::kl: {
      // z_i tracks ln p_i from above via exponential tangents; the budget
      // row bounds the divergence surrogate.
      layout.z_base = lp.add_block("Z", k, -kLpInfinity, kLpInfinity);
      double budget_rhs = 0.0;  // sum p^BS ln p^BS - c_f
      for (int i = 0; i < k; ++i)
        if (p_bs[i] > 0.0) budget_rhs += p_bs[i] * std::log(p_bs[i]);
      budget_rhs -= fairness.c_f;
      int budget = lp.add_row(Relation::ge, budget_rhs);
      for (int i = 0; i < k; ++i)
        if (p_bs[i] != 0.0) lp.add_coefficient(budget, layout.z_base + i, p_bs[i]);
      for (int i = 0; i < k; ++i) {
        for (int m = 1; m <= fairness.m_kl; ++m) {
          double e = static_cast<double>(m - 1) * fairness.s;
          int row = lp.add_row(Relation::le, -(e + 1.0));
          lp.add_coefficient(row, layout.z_base + i, 1.0);
          lp.add_coefficient(row, layout.p_base + i, -std::exp(e));
        }
      }
      break;
    }
    case FairnessKind::none:
      break;
  }
}

}  // namespace

BuiltLp build_nfr_lp(const RelevanceMatrix& relevance, const BaselineProfile& profile,
                     const ScenarioConfig& cfg, const CostVector& costs) {
  BuiltLp built = build_base(relevance, profile, cfg, costs);
  built.lp.seal();
  return built;
}

BuiltLp build_diverse_lp(const RelevanceMatrix& relevance, const BaselineProfile& profile,
                         const ScenarioConfig& cfg, const CostVector& costs,
                         const CutFamily& cuts) {
  if (cuts.lines.empty()) throw ConfigError("build_diverse_lp: empty cut family");
  BuiltLp built = build_base(relevance, profile, cfg, costs);
  add_entropy_block(built, profile, cfg, cuts);
  built.lp.seal();
  return built;
}

BuiltLp build_fair_diverse_lp(const RelevanceMatrix& relevance,
                              const BaselineProfile& profile, const ScenarioConfig& cfg,
                              const CostVector& costs, const CutFamily& cuts,
                              const FairnessSpec& fairness) {
  if (cuts.lines.empty()) throw ConfigError("build_fair_diverse_lp: empty cut family");
  BuiltLp built = build_base(relevance, profile, cfg, costs);
  add_entropy_block(built, profile, cfg, cuts);
  add_fairness_block(built, profile, fairness);
  built.lp.seal();
  return built;
}

DiverseSolution solve_and_recover(const BuiltLp& built, const BaselineProfile& profile,
                                  const ScenarioConfig& cfg, double tol,
                                  long max_iter) {
  const LpLayout& layout = built.layout;
  const int k = layout.k;
  if (profile.policy.k != k || cfg.k != k)
    throw ConfigError("solve_and_recover: dimension mismatch");

  DiverseSolution sol;
  sol.k = k;
  sol.report = solve(built.lp, tol, max_iter);
  if (sol.report.status != SolveStatus::optimal) return sol;

  const std::vector<double>& x = sol.report.primal;
  sol.flow.resize(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      sol.flow[static_cast<std::size_t>(i) * k + j] =
          std::max(0.0, x[layout.f_index(i, j)]);

  sol.p_nf.probs.resize(k);
  for (int i = 0; i < k; ++i) sol.p_nf.probs[i] = std::max(0.0, x[layout.p_base + i]);
  sol.p_nf.validate(1e-9);

  if (layout.d_base >= 0) {
    sol.d.assign(x.begin() + layout.d_base, x.begin() + layout.d_base + k);
    sol.claimed_entropy = -stable_sum(sol.d);
  } else {
    sol.claimed_entropy = 0.0;
  }

  sol.policy.k = k;
  sol.policy.rows.assign(static_cast<std::size_t>(k) * k, 0.0);
  for (int i = 0; i < k; ++i) {
    double demand = sol.p_nf.probs[i];
    if (demand < 1e-12) {
      for (int j = 0; j < k; ++j) sol.policy.at(i, j) = profile.policy.at(i, j);
      sol.fallback_rows.push_back(i);
      continue;
    }
    for (int j = 0; j < k; ++j) {
      double r = sol.flow[static_cast<std::size_t>(i) * k + j] / demand;
      sol.policy.at(i, j) = std::clamp(r, 0.0, 1.0);
    }
    sol.policy.at(i, i) = 0.0;
  }

  sol.cost = sol.report.objective_value;
  sol.realized_entropy = entropy_of_demand(sol.p_nf);
  sol.entropy_gap = sol.claimed_entropy - sol.realized_entropy;
  return sol;
}

HessianMinors convexity_minors(double f_val, double z_val) {
  if (!(f_val > 0.0) || !(z_val > 0.0))
    throw DomainError("convexity_minors: inputs must be strictly positive");
  HessianMinors minors;
  minors.m11 = 1.0 / f_val;
  minors.m22 = f_val / (z_val * z_val);
  minors.det = minors.m11 * minors.m22 - (1.0 / z_val) * (1.0 / z_val);
  return minors;
}

double fairness_max(const DemandDistribution& a, const DemandDistribution& b) {
  if (a.size() != b.size()) throw ShapeError("fairness_max: dimension mismatch");
  double worst = 0.0;
  for (int i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a.probs[i] - b.probs[i]));
  return worst;
}

double fairness_tv(const DemandDistribution& a, const DemandDistribution& b) {
  if (a.size() != b.size()) throw ShapeError("fairness_tv: dimension mismatch");
  double sum = 0.0;
  for (int i = 0; i < a.size(); ++i) sum += std::abs(a.probs[i] - b.probs[i]);
  return 0.5 * sum;
}

double fairness_kl(const DemandDistribution& reference, const DemandDistribution& actual) {
  if (reference.size() != actual.size()) throw ShapeError("fairness_kl: dimension mismatch");
  double sum = 0.0;
  for (int i = 0; i < reference.size(); ++i) {
    double p = reference.probs[i];
    if (p <= 0.0) continue;
    if (actual.probs[i] <= 0.0) return kLpInfinity;
    sum += p * std::log(p / actual.probs[i]);
  }
  return sum;
}

void write_solution_csv(const DiverseSolution& sol, std::ostream& out) {
  char buf[256];
  out << "i,j,f,r\n";
  for (int i = 0; i < sol.k; ++i) {
    for (int j = 0; j < sol.k; ++j) {
      double f = sol.flow.empty() ? 0.0 : sol.flow[static_cast<std::size_t>(i) * sol.k + j];
      if (f <= 0.0) continue;
      std::snprintf(buf, sizeof(buf), "%d,%d,%.12g,%.12g\n", i + 1, j + 1, f,
                    sol.policy.at(i, j));
      out << buf;
    }
  }
  out << "\ni,p_nf,d\n";
  for (int i = 0; i < sol.k; ++i) {
    double p = sol.p_nf.probs.empty() ? 0.0 : sol.p_nf.probs[i];
    double d = sol.d.empty() ? 0.0 : sol.d[i];
    std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g\n", i + 1, p, d);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf),
                "# cost=%.12g realized_entropy=%.12g claimed_entropy=%.12g "
                "entropy_gap=%.12g status=%s iterations=%ld\n",
                sol.cost, sol.realized_entropy, sol.claimed_entropy, sol.entropy_gap,
                to_string(sol.report.status), sol.report.iterations);
  out << buf;
}

}  // namespace nfr
