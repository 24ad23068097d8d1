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

#include "nfr/demand.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "nfr/errors.hpp"
#include "nfr/linalg.hpp"
#include "nfr/rng.hpp"

namespace nfr {

DemandDistribution stationary_demand(const DemandDistribution& p0,
                                     const RecommendationPolicy& policy,
                                     double alpha, int n_rec) {
  const int k = p0.size();
  if (policy.k != k) throw ShapeError("stationary_demand: dimension mismatch");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ConfigError("stationary_demand: alpha must lie in (0,1)");

  // Row vector system p (I - (alpha/N) R) = (1-alpha) p0, transposed so the
  // LU solver sees a column system.
  std::vector<double> system(static_cast<std::size_t>(k) * k);
  const double scale = alpha / n_rec;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      system[static_cast<std::size_t>(j) * k + i] =
          (i == j ? 1.0 : 0.0) - scale * policy.at(i, j);

  DenseLu lu;
  if (!lu.factor(k, system))
    throw NumericalError(
        "stationary_demand: singular system; policy invariants violated upstream");

  DemandDistribution out;
  out.probs.resize(k);
  for (int j = 0; j < k; ++j) out.probs[j] = (1.0 - alpha) * p0.probs[j];
  lu.solve(out.probs);

  // One step of iterative refinement keeps the residual at machine noise.
  std::vector<double> residual(k);
  for (int j = 0; j < k; ++j) {
    double acc = (1.0 - alpha) * p0.probs[j] - out.probs[j];
    for (int i = 0; i < k; ++i) acc += scale * policy.at(i, j) * out.probs[i];
    residual[j] = acc;
  }
  lu.solve(residual);
  for (int j = 0; j < k; ++j) out.probs[j] += residual[j];

  for (double& v : out.probs) {
    if (v < 0.0) {
      if (v < -1e-9)
        throw NumericalError("stationary_demand: negative probability " +
                             std::to_string(v));
      v = 0.0;
    }
  }
  out.validate(1e-9);
  return out;
}

double expected_cost(const DemandDistribution& p, const CostVector& c) {
  if (p.size() != c.size()) throw ShapeError("expected_cost: dimension mismatch");
  double acc = 0.0;
  for (int i = 0; i < p.size(); ++i) acc += p.probs[i] * c.costs[i];
  return acc;
}

double entropy_of_demand(const DemandDistribution& p) {
  double h = 0.0;
  for (double v : p.probs)
    if (v > 0.0) h -= v * std::log(v);
  return h;
}

double entropy_of_policy_row(const RecommendationPolicy& policy, int item) {
  double h = 0.0;
  for (int j = 0; j < policy.k; ++j) {
    double v = policy.at(item, j);
    if (v > 0.0) h -= v * std::log(v);
  }
  // 1*ln 1 terms vanish, so a deterministic row yields exactly 0; tiny
  // negative round-off is clipped.
  return h < 0.0 ? 0.0 : h;
}

namespace {

// Cumulative row tables for categorical draws.
struct CdfTable {
  int k;
  std::vector<double> cdf;  // row-major, K entries per row, last ~ total

  static CdfTable from_policy(const RecommendationPolicy& policy) {
    CdfTable t;
    t.k = policy.k;
    t.cdf.resize(policy.rows.size());
    for (int i = 0; i < policy.k; ++i) {
      double acc = 0.0;
      for (int j = 0; j < policy.k; ++j) {
        acc += policy.at(i, j);
        t.cdf[static_cast<std::size_t>(i) * policy.k + j] = acc;
      }
    }
    return t;
  }

  int draw_row(int i, double u) const {
    const double* begin = cdf.data() + static_cast<std::size_t>(i) * k;
    double total = begin[k - 1];
    double target = u * total;
    const double* it = std::lower_bound(begin, begin + k, target);
    int j = static_cast<int>(it - begin);
    return j < k ? j : k - 1;
  }
};

int draw_from_distribution(const std::vector<double>& cdf, double u) {
  double target = u * cdf.back();
  auto it = std::lower_bound(cdf.begin(), cdf.end(), target);
  int j = static_cast<int>(it - cdf.begin());
  return j < static_cast<int>(cdf.size()) ? j : static_cast<int>(cdf.size()) - 1;
}

// Systematic sampling of an N-item list with inclusion probabilities r_ij
// (row sums to N, entries <= 1), then a uniform pick among the N items.
int draw_materialized(const CdfTable& table, int row, int n_rec, Rng& rng) {
  const double* cdf = table.cdf.data() + static_cast<std::size_t>(row) * table.k;
  double start = rng.next_double();
  std::uint64_t pick = rng.next_below(static_cast<std::uint64_t>(n_rec));
  double target = start + static_cast<double>(pick);
  const double* it = std::lower_bound(cdf, cdf + table.k, target);
  int j = static_cast<int>(it - cdf);
  return j < table.k ? j : table.k - 1;
}

}  // namespace

SimulationResult simulate_sessions(const DemandDistribution& p0,
                                   const RecommendationPolicy& policy,
                                   double alpha, int n_rec, int session_len,
                                   long long sessions, std::uint64_t seed,
                                   const CostVector& costs,
                                   const SimulationOptions& options) {
  const int k = p0.size();
  if (policy.k != k || costs.size() != k)
    throw ShapeError("simulate_sessions: dimension mismatch");
  if (sessions < 1) throw ConfigError("simulate_sessions: need at least one session");
  if (session_len < 1) throw ConfigError("simulate_sessions: need at least one step");

  std::vector<double> p0_cdf(k);
  {
    double acc = 0.0;
    for (int j = 0; j < k; ++j) {
      acc += p0.probs[j];
      p0_cdf[j] = acc;
    }
  }
  CdfTable table = CdfTable::from_policy(policy);

  std::vector<long long> counts(k, 0);
  double cost_acc = 0.0;
  SimulationResult result;
  if (options.record_traces) result.traces.reserve(static_cast<std::size_t>(sessions));

  for (long long s = 0; s < sessions; ++s) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(s));
    SessionTrace trace;
    if (options.record_traces) {
      trace.items.reserve(session_len);
      trace.followed.reserve(session_len);
    }
    int current = draw_from_distribution(p0_cdf, rng.next_double());
    ++counts[current];
    cost_acc += costs.costs[current];
    if (options.record_traces) {
      trace.items.push_back(current);
      trace.followed.push_back(0);
    }
    for (int step = 1; step < session_len; ++step) {
      bool follow = rng.next_double() < alpha;
      int next;
      if (follow) {
        next = options.materialize_lists ? draw_materialized(table, current, n_rec, rng)
                                         : table.draw_row(current, rng.next_double());
      } else {
        next = draw_from_distribution(p0_cdf, rng.next_double());
      }
      current = next;
      ++counts[current];
      cost_acc += costs.costs[current];
      if (options.record_traces) {
        trace.items.push_back(current);
        trace.followed.push_back(follow ? 1 : 0);
      }
    }
    if (options.record_traces) result.traces.push_back(std::move(trace));
  }

  const long long total = sessions * static_cast<long long>(session_len);
  result.total_steps = total;
  result.mean_cost = cost_acc / static_cast<double>(total);
  result.empirical.probs.resize(k);
  for (int j = 0; j < k; ++j)
    result.empirical.probs[j] = static_cast<double>(counts[j]) / static_cast<double>(total);
  return result;
}

void write_trace_csv(const SimulationResult& result, const CostVector& costs,
                     std::ostream& out) {
  out << "session,step,item,followed,cost\n";
  for (std::size_t s = 0; s < result.traces.size(); ++s) {
    const SessionTrace& t = result.traces[s];
    for (std::size_t step = 0; step < t.items.size(); ++step) {
      out << s + 1 << ',' << step + 1 << ',' << t.items[step] + 1 << ','
          << static_cast<int>(t.followed[step]) << ',' << costs.costs[t.items[step]]
          << "\n";
    }
  }
}

}  // namespace nfr
