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

#ifndef NFR_OPTIMIZER_HPP_
#define NFR_OPTIMIZER_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "nfr/baseline.hpp"
#include "nfr/lp.hpp"
#include "nfr/types.hpp"

namespace nfr {

// ---------------------------------------------------------------------------
// Entropy cuts for g(x) = x ln x on (0, 1].

enum class CutSampling { tangent_linear, tangent_exponential, secant };

struct CutLine {
  double slope;
  double intercept;
  double sample_x;  // tangency point, or right endpoint of a chord
};

// Tangent lines underestimate the convex g everywhere (a relaxation when the
// program pushes d down to the cut envelope); secant chords overestimate it
// on [0,1], giving a conservative surrogate instead.
struct CutFamily {
  CutSampling mode = CutSampling::tangent_linear;
  int count = 0;
  double step = 0.1;  // exponential sampling spacing
  std::vector<CutLine> lines;

  double evaluate(int line, double x) const {
    return lines[line].slope * x + lines[line].intercept;
  }
  // max over lines; equals the tightest feasible d value at x.
  double envelope(double x) const;
};

// tangent_linear samples g at m/M for m = 1..M; tangent_exponential at
// e^{-(m-1) step}; secant takes the M chords of g over the uniform grid
// {0, 1/M, ..., 1}.
CutFamily make_cuts(CutSampling mode, int count, double step = 0.1);

CutSampling cut_sampling_from_mode(CutMode mode);

// ---------------------------------------------------------------------------
// Program builders. Variable blocks: F (K*K joint flow, diagonal fixed at
// zero), P (demand), D (entropy surrogates, diverse programs only), Z
// (fairness auxiliaries). Row order: quality, row-sum, domination, demand
// balance, then the entropy block, then the fairness block. Builders are
// pure: identical inputs give an identical program.

struct LpLayout {
  int k = 0;
  int f_base = -1;
  int p_base = -1;
  int d_base = -1;
  int z_base = -1;
  int quality_row = -1;
  int rowsum_row = -1;
  int domination_row = -1;
  int balance_row = -1;
  int entropy_row = -1;
  int cut_row = -1;
  int fairness_row = -1;

  int f_index(int i, int j) const { return f_base + i * k + j; }
};

struct BuiltLp {
  LinearProgram lp;
  LpLayout layout;
};

struct FairnessSpec {
  FairnessKind kind = FairnessKind::max;
  double c_f = 0.0;
  double s = 0.1;   // exponential cut spacing for the kl surrogate
  int m_kl = 100;   // kl cut count

  void validate() const;
};

// Cost-minimal recommendation flow subject to quality, row-sum, domination
// and demand-balance rows; the demand balance uses the (1-alpha) p0
// right-hand side so the demand block always sums to one.
BuiltLp build_nfr_lp(const RelevanceMatrix& relevance, const BaselineProfile& profile,
                     const ScenarioConfig& cfg, const CostVector& costs);

// Adds the K free surrogate variables d_i, the aggregate entropy row
// sum d_i <= -b H(p^BS), and one cut row per (item, line).
BuiltLp build_diverse_lp(const RelevanceMatrix& relevance, const BaselineProfile& profile,
                         const ScenarioConfig& cfg, const CostVector& costs,
                         const CutFamily& cuts);

// Appends the linear fairness block for the chosen metric on top of the
// diverse program (use cfg.b = 0 for a fairness-only program).
BuiltLp build_fair_diverse_lp(const RelevanceMatrix& relevance,
                              const BaselineProfile& profile, const ScenarioConfig& cfg,
                              const CostVector& costs, const CutFamily& cuts,
                              const FairnessSpec& fairness);

// ---------------------------------------------------------------------------
// Solution recovery and validation.

struct DiverseSolution {
  SolveReport report;
  int k = 0;
  std::vector<double> flow;        // K*K joint flow values
  DemandDistribution p_nf;
  std::vector<double> d;           // empty for the plain program
  RecommendationPolicy policy;     // recovered r_ij = f_ij / p_i
  std::vector<int> fallback_rows;  // rows recovered from the baseline policy
  double cost = 0.0;
  double realized_entropy = 0.0;
  double claimed_entropy = 0.0;  // -sum d_i; 0 for the plain program
  double entropy_gap = 0.0;      // claimed - realized
};

// Solves the program and inverts the flow transformation. Rows whose demand
// falls below 1e-12 fall back to the baseline row and are flagged; this
// cannot happen when p0 is strictly positive. A non-optimal solve returns
// with the report filled and no recovery.
DiverseSolution solve_and_recover(const BuiltLp& built, const BaselineProfile& profile,
                                  const ScenarioConfig& cfg, double tol = 1e-9,
                                  long max_iter = -1);

// Hessian principal minors of (f, z) -> f ln(f/z) at a positive point:
// (1/f, f/z^2, and their determinant, which vanishes identically).
struct HessianMinors {
  double m11;
  double m22;
  double det;
};
HessianMinors convexity_minors(double f_val, double z_val);

// Fairness metrics between the optimized and baseline demand.
double fairness_max(const DemandDistribution& a, const DemandDistribution& b);
double fairness_tv(const DemandDistribution& a, const DemandDistribution& b);
// KL(reference || actual); +infinity when the support shrinks.
double fairness_kl(const DemandDistribution& reference, const DemandDistribution& actual);

struct ValidationReport {
  bool ok = false;
  std::vector<std::string> violations;
  double demand_tv = 0.0;          // closed form from the policy vs LP demand
  double cost_route_mismatch = 0.0;
  double min_quality_slack = 0.0;  // min_i (sum_j r u - q q_max)
  double realized_entropy = 0.0;
  double entropy_floor = 0.0;  // b H(p^BS)
  double f_max = 0.0;
  double f_tv = 0.0;
  double f_kl = 0.0;
};

// Recomputes everything from the recovered policy alone: stationary demand
// (total variation vs the LP demand <= 1e-6), per-row quality, the session
// cost route (<= 1e-8 mismatch), the entropy floor, and fairness metrics.
// Tangent-mode programs check the claimed entropy against the floor (the
// cut envelope under-approximates, so realized entropy may fall below it);
// secant-mode programs must satisfy the floor with realized entropy.
ValidationReport validate_solution(const DiverseSolution& sol,
                                   const RelevanceMatrix& relevance,
                                   const BaselineProfile& profile,
                                   const ScenarioConfig& cfg, const CostVector& costs,
                                   const DemandDistribution& p0,
                                   const FairnessSpec* fairness = nullptr);

// Sparse i,j,f,r table, then i,p_nf,d, then a summary comment line.
void write_solution_csv(const DiverseSolution& sol, std::ostream& out);

}  // namespace nfr

#endif  // NFR_OPTIMIZER_HPP_
