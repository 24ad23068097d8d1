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

#include "nfr/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "nfr/baseline.hpp"
#include "nfr/catalog.hpp"
#include "nfr/demand.hpp"
#include "nfr/errors.hpp"

namespace nfr {

namespace {

double pct_of(double value, double base) {
  // 100-by-convention when the baseline value is zero.
  return base > 0.0 ? 100.0 * value / base : 100.0;
}

std::string format_tag(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
std::string format_tag(const char* fmt, ...) {
  char buf[96];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

struct RowTimer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

SweepRow make_solution_row(const ProblemInstance& inst, const DiverseSolution& sol,
                           const std::string& tag, double b, double c_f,
                           const FairnessSpec* fairness, double seconds) {
  SweepRow row;
  row.scenario_id = inst.cfg.id();
  row.algorithm = tag;
  row.b = b;
  row.c_f = c_f;
  row.iterations = sol.report.iterations;
  row.solve_seconds = seconds;
  if (sol.report.status != SolveStatus::optimal) {
    row.status = to_string(sol.report.status);
    return row;
  }
  ScenarioConfig cfg = inst.cfg;
  cfg.b = b;
  ValidationReport validation = validate_solution(sol, inst.relevance, inst.profile,
                                                  cfg, inst.costs, inst.p0, fairness);
  row.status = validation.ok ? "ok" : "invalid";
  row.cost = sol.cost;
  row.cost_pct = pct_of(sol.cost, inst.profile.cost_bs);
  row.entropy = sol.realized_entropy;
  row.entropy_pct = pct_of(sol.realized_entropy, inst.profile.entropy_bs);
  row.entropy_gap = sol.entropy_gap;
  return row;
}

}  // namespace

ProblemInstance make_instance(const ScenarioConfig& cfg, RelevanceMatrix relevance) {
  cfg.validate();
  if (relevance.k != cfg.k)
    throw ConfigError("make_instance: relevance matrix does not match K");
  ProblemInstance inst;
  inst.cfg = cfg;
  inst.relevance = std::move(relevance);
  inst.p0 = zipf_direct_demand(cfg.k, cfg.pop);
  // Cache placement needs the baseline demand, so run the baseline once with
  // zero costs, place the cache, then freeze the full profile.
  BsrResult bsr = build_bsr(inst.relevance, cfg.n_rec);
  DemandDistribution demand_bs =
      stationary_demand(inst.p0, bsr.policy, cfg.alpha, cfg.n_rec);
  inst.costs = build_costs(demand_bs, cfg.cache_size);
  inst.profile.policy = std::move(bsr.policy);
  inst.profile.q_max = std::move(bsr.q_max);
  inst.profile.demand_bs = std::move(demand_bs);
  inst.profile.entropy_bs = entropy_of_demand(inst.profile.demand_bs);
  inst.profile.cost_bs = expected_cost(inst.profile.demand_bs, inst.costs);
  return inst;
}

ProblemInstance make_synthetic_instance(const ScenarioConfig& cfg, double density) {
  return make_instance(cfg, synth_relevance(cfg.k, density, cfg.seed));
}

SweepResult run_scenario(const ScenarioConfig& cfg, const RelevanceMatrix& relevance,
                         const SweepRequest& request) {
  ProblemInstance inst = make_instance(cfg, relevance);
  SweepResult result;

  SweepRow bsr_row;
  bsr_row.scenario_id = inst.cfg.id();
  bsr_row.algorithm = "BSR";
  bsr_row.cost = inst.profile.cost_bs;
  bsr_row.cost_pct = 100.0;
  bsr_row.entropy = inst.profile.entropy_bs;
  bsr_row.entropy_pct = 100.0;
  bsr_row.status = "ok";
  result.rows.push_back(bsr_row);

  {
    RowTimer timer;
    BuiltLp built = build_nfr_lp(inst.relevance, inst.profile, inst.cfg, inst.costs);
    DiverseSolution sol = solve_and_recover(built, inst.profile, inst.cfg);
    result.rows.push_back(
        make_solution_row(inst, sol, "NFR", 0.0, 0.0, nullptr, timer.seconds()));
  }

  const CutFamily cuts =
      make_cuts(cut_sampling_from_mode(cfg.cut_mode), cfg.m_cuts);

  for (double b : request.b_list) {
    RowTimer timer;
    ScenarioConfig point_cfg = inst.cfg;
    point_cfg.b = b;
    BuiltLp built =
        build_diverse_lp(inst.relevance, inst.profile, point_cfg, inst.costs, cuts);
    DiverseSolution sol = solve_and_recover(built, inst.profile, point_cfg);
    result.rows.push_back(make_solution_row(inst, sol, format_tag("Diverse(%.2f)", b),
                                            b, 0.0, nullptr, timer.seconds()));
  }

  for (FairnessKind kind : request.kinds) {
    for (double c_f : request.cf_list) {
      FairnessSpec fairness;
      fairness.kind = kind;
      fairness.c_f = c_f;
      {
        RowTimer timer;
        ScenarioConfig point_cfg = inst.cfg;
        point_cfg.b = 0.0;  // fairness-only program
        BuiltLp built = build_fair_diverse_lp(inst.relevance, inst.profile, point_cfg,
                                              inst.costs, cuts, fairness);
        DiverseSolution sol = solve_and_recover(built, inst.profile, point_cfg);
        result.rows.push_back(make_solution_row(
            inst, sol, format_tag("Fair(%s:%.2f)", to_string(kind), c_f), 0.0, c_f,
            &fairness, timer.seconds()));
      }
      if (request.fair_diverse) {
        for (double b : request.b_list) {
          RowTimer timer;
          ScenarioConfig point_cfg = inst.cfg;
          point_cfg.b = b;
          BuiltLp built = build_fair_diverse_lp(inst.relevance, inst.profile, point_cfg,
                                                inst.costs, cuts, fairness);
          DiverseSolution sol = solve_and_recover(built, inst.profile, point_cfg);
          result.rows.push_back(make_solution_row(
              inst, sol, format_tag("FairDiverse(%s:%.2f:%.2f)", to_string(kind), b, c_f),
              b, c_f, &fairness, timer.seconds()));
        }
      }
    }
  }
  return result;
}

SweepResult compare_fairness(const ScenarioConfig& cfg, const RelevanceMatrix& relevance,
                             const std::vector<double>& b_list,
                             const std::vector<double>& cf_list,
                             const std::vector<FairnessKind>& kinds) {
  SweepRequest request;
  request.b_list = b_list;
  request.cf_list = cf_list;
  request.kinds = kinds;
  request.fair_diverse = true;
  return run_scenario(cfg, relevance, request);
}

std::string tradeoff_curve_csv(const SweepResult& result) {
  struct Point {
    double sort_key;
    double cost_pct, entropy_pct;
    std::string tag;
  };
  std::vector<Point> points;
  int diverse_count = 0;
  for (const SweepRow& row : result.rows) {
    if (row.status != "ok") continue;
    if (row.algorithm == "NFR") {
      points.push_back({-1.0, row.cost_pct, row.entropy_pct, row.algorithm});
    } else if (row.algorithm == "BSR") {
      points.push_back({2.0, row.cost_pct, row.entropy_pct, row.algorithm});
    } else if (row.algorithm.rfind("Diverse(", 0) == 0) {
      points.push_back({row.b, row.cost_pct, row.entropy_pct, row.algorithm});
      ++diverse_count;
    }
  }
  if (diverse_count < 2)
    throw ConfigError("tradeoff_curve: need at least two Diverse rows");
  std::stable_sort(points.begin(), points.end(),
                   [](const Point& a, const Point& b) { return a.sort_key < b.sort_key; });
  std::ostringstream out;
  out << "cost_pct,entropy_pct,tag\n";
  char buf[128];
  for (const Point& p : points) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%s\n", p.cost_pct, p.entropy_pct,
                  p.tag.c_str());
    out << buf;
  }
  return out.str();
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "scenario,algorithm,b,cf,cost,cost_pct,entropy,entropy_pct,entropy_gap,"
         "iterations,status\n";
  char buf[320];
  for (const SweepRow& r : result.rows) {
    std::snprintf(buf, sizeof(buf),
                  "%s,%s,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%ld,%s\n",
                  r.scenario_id.c_str(), r.algorithm.c_str(), r.b, r.c_f, r.cost,
                  r.cost_pct, r.entropy, r.entropy_pct, r.entropy_gap, r.iterations,
                  r.status.c_str());
    out << buf;
  }
}

void write_timings_csv(const SweepResult& result, std::ostream& out) {
  out << "scenario,algorithm,solve_seconds\n";
  char buf[160];
  for (const SweepRow& r : result.rows) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%.6f\n", r.scenario_id.c_str(),
                  r.algorithm.c_str(), r.solve_seconds);
    out << buf;
  }
}

SweepResult read_sweep_csv(std::istream& in) {
  SweepResult result;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("sweep csv: empty input");
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream fs(line);
    while (std::getline(fs, field, ',')) fields.push_back(field);
    if (fields.size() != 11)
      throw ParseError("sweep csv line " + std::to_string(line_no) +
                       ": expected 11 fields");
    SweepRow row;
    row.scenario_id = fields[0];
    row.algorithm = fields[1];
    try {
      row.b = std::stod(fields[2]);
      row.c_f = std::stod(fields[3]);
      row.cost = std::stod(fields[4]);
      row.cost_pct = std::stod(fields[5]);
      row.entropy = std::stod(fields[6]);
      row.entropy_pct = std::stod(fields[7]);
      row.entropy_gap = std::stod(fields[8]);
      row.iterations = std::stol(fields[9]);
    } catch (const std::exception&) {
      throw ParseError("sweep csv line " + std::to_string(line_no) + ": bad number");
    }
    row.status = fields[10];
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::string render_report_table(const SweepResult& result) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-28s %-28s %9s %8s %9s %8s\n", "RS", "Parameters",
                "c", "%c_BS", "H", "%H_BS");
  out << buf;
  auto pct_text = [](double pct) {
    char p[24];
    if (pct < 10.0)
      std::snprintf(p, sizeof(p), "%.1f%%", pct);
    else
      std::snprintf(p, sizeof(p), "%.0f%%", pct);
    return std::string(p);
  };
  for (const SweepRow& r : result.rows) {
    if (r.status != "ok") {
      std::snprintf(buf, sizeof(buf), "%-28s %-28s %9s %8s %9s %8s  [%s]\n",
                    r.algorithm.c_str(), r.scenario_id.c_str(), "-", "-", "-", "-",
                    r.status.c_str());
      out << buf;
      continue;
    }
    std::snprintf(buf, sizeof(buf), "%-28s %-28s %9.3f %8s %9.3f %8s\n",
                  r.algorithm.c_str(), r.scenario_id.c_str(), r.cost,
                  pct_text(r.cost_pct).c_str(), r.entropy,
                  pct_text(r.entropy_pct).c_str());
    out << buf;
  }
  return out.str();
}

std::vector<ScenarioConfig> bundled_scenarios() {
  // Frozen synthetic grid: desk-scale stand-ins for platform catalogs.
  std::vector<ScenarioConfig> scenarios;
  auto base = []() {
    ScenarioConfig cfg;
    cfg.k = 30;
    cfg.n_rec = 2;
    cfg.cache_size = 5;
    cfg.session_len = 40;
    cfg.m_cuts = 100;
    cfg.alpha = 0.8;
    cfg.pop = 1.0;
    cfg.q = 0.8;
    cfg.b = 0.8;
    cfg.cut_mode = CutMode::tangent;
    return cfg;
  };
  {
    ScenarioConfig cfg = base();
    cfg.seed = 101;
    scenarios.push_back(cfg);
  }
  {
    ScenarioConfig cfg = base();
    cfg.alpha = 0.99;
    cfg.seed = 102;
    scenarios.push_back(cfg);
  }
  {
    ScenarioConfig cfg = base();
    cfg.pop = 0.0;
    cfg.seed = 103;
    scenarios.push_back(cfg);
  }
  {
    ScenarioConfig cfg = base();
    cfg.n_rec = 3;
    cfg.cache_size = 3;
    cfg.seed = 104;
    scenarios.push_back(cfg);
  }
  {
    ScenarioConfig cfg = base();
    cfg.q = 0.5;
    cfg.alpha = 0.9;
    cfg.seed = 105;
    scenarios.push_back(cfg);
  }
  return scenarios;
}

}  // namespace nfr
