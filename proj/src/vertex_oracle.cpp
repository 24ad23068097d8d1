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
#include <vector>

#include "nfr/errors.hpp"
#include "nfr/linalg.hpp"
#include "nfr/lp.hpp"

namespace nfr {

namespace {

constexpr double kOracleTol = 1e-9;

struct Candidate {
  bool is_row;
  int index;     // row index, or variable index for a bound
  double value;  // bound value when !is_row
};

}  // namespace

OracleResult vertex_oracle(const LinearProgram& lp) {
  if (!lp.sealed()) throw ConfigError("vertex_oracle: program must be sealed");
  const int n = lp.num_vars();
  if (n > 12) throw ConfigError("vertex_oracle: refusing more than 12 variables");

  std::vector<Candidate> candidates;
  for (int r = 0; r < lp.num_rows(); ++r) candidates.push_back({true, r, 0.0});
  for (int c = 0; c < n; ++c) {
    if (lp.lower(c) > -kLpInfinity) candidates.push_back({false, c, lp.lower(c)});
    if (lp.upper(c) < kLpInfinity && lp.upper(c) != lp.lower(c))
      candidates.push_back({false, c, lp.upper(c)});
  }
  const int total = static_cast<int>(candidates.size());
  if (total < n) return {SolveStatus::infeasible, 0.0};

  // Subset count guard: C(total, n) kept enumerable.
  double combos = 1.0;
  for (int i = 0; i < n; ++i) combos = combos * (total - i) / (i + 1);
  if (combos > 5e6)
    throw ConfigError("vertex_oracle: refusing instance with too many active sets");

  std::vector<int> pick(n);
  for (int i = 0; i < n; ++i) pick[i] = i;

  std::vector<double> system(static_cast<std::size_t>(n) * n);
  std::vector<double> point(n);
  DenseLu lu;

  bool found = false;
  double best = kLpInfinity;

  while (true) {
    // Solve the active set as equalities.
    std::fill(system.begin(), system.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      const Candidate& cand = candidates[pick[i]];
      if (cand.is_row) {
        for (const LpEntry& e : lp.row(cand.index))
          system[static_cast<std::size_t>(i) * n + e.index] = e.value;
        point[i] = lp.rhs(cand.index);
      } else {
        system[static_cast<std::size_t>(i) * n + cand.index] = 1.0;
        point[i] = cand.value;
      }
    }
    if (lu.factor(n, system, 1e-10)) {
      lu.solve(point);
      bool feasible = true;
      for (int c = 0; c < n && feasible; ++c) {
        if (lp.lower(c) > -kLpInfinity &&
            point[c] < lp.lower(c) - kOracleTol * (1.0 + std::abs(lp.lower(c))))
          feasible = false;
        if (lp.upper(c) < kLpInfinity &&
            point[c] > lp.upper(c) + kOracleTol * (1.0 + std::abs(lp.upper(c))))
          feasible = false;
      }
      for (int r = 0; r < lp.num_rows() && feasible; ++r) {
        double activity = 0.0;
        for (const LpEntry& e : lp.row(r)) activity += e.value * point[e.index];
        double slack = kOracleTol * (1.0 + std::abs(lp.rhs(r)));
        switch (lp.relation(r)) {
          case Relation::le: feasible = activity <= lp.rhs(r) + slack; break;
          case Relation::ge: feasible = activity >= lp.rhs(r) - slack; break;
          case Relation::eq: feasible = std::abs(activity - lp.rhs(r)) <= slack; break;
        }
      }
      if (feasible) {
        found = true;
        double obj = lp.objective_value(point);
        if (obj < best) best = obj;
      }
    }
    // next n-subset in lexicographic order
    int i = n - 1;
    while (i >= 0 && pick[i] == total - n + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }

  if (!found) return {SolveStatus::infeasible, 0.0};
  return {SolveStatus::optimal, best};
}

}  // namespace nfr
