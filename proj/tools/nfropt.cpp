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

// Command-line front end: ingest, bsr, optimize, simulate, sweep, report.
// Exit codes: 0 ok, 2 no optimal solution (infeasible/unbounded/limit),
// 3 configuration or input error, 4 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nfr/baseline.hpp"
#include "nfr/bench.hpp"
#include "nfr/catalog.hpp"
#include "nfr/demand.hpp"
#include "nfr/errors.hpp"
#include "nfr/lp.hpp"
#include "nfr/optimizer.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNoSolution = 2;
constexpr int kExitConfig = 3;
constexpr int kExitIo = 4;

struct CommonOptions {
  std::string scenario_path;
  std::string relevance_path;
  double density = 0.25;
  double threshold = 0.5;
};

nfr::ScenarioConfig load_config(const CommonOptions& opts) {
  if (opts.scenario_path.empty())
    throw nfr::ConfigError("missing --scenario file");
  return nfr::load_scenario_file(opts.scenario_path);
}

nfr::RelevanceMatrix load_matrix(const CommonOptions& opts,
                                 const nfr::ScenarioConfig& cfg) {
  if (!opts.relevance_path.empty()) {
    nfr::RelevanceMatrix m = nfr::load_relevance(opts.relevance_path, opts.threshold);
    if (m.k != cfg.k)
      throw nfr::ConfigError("relevance matrix K=" + std::to_string(m.k) +
                             " does not match scenario K=" + std::to_string(cfg.k));
    return m;
  }
  return nfr::synth_relevance(cfg.k, opts.density, cfg.seed);
}

// Atomic-ish write: temp file in place, then rename, so partial runs never
// leave a corrupt report behind.
void write_file(const std::string& path, const std::string& contents) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw nfr::IoError("cannot open '" + tmp + "' for writing");
    out << contents;
    out.flush();
    if (!out) throw nfr::IoError("failed writing '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw nfr::IoError("cannot rename '" + tmp + "' to '" + path + "'");
}

void emit(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-")
    std::cout << contents;
  else
    write_file(path, contents);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    values.push_back(std::stod(item));
  }
  return values;
}

std::vector<nfr::FairnessKind> parse_kinds(const std::string& text) {
  std::vector<nfr::FairnessKind> kinds;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) kinds.push_back(nfr::fairness_kind_from_string(item));
  return kinds;
}

int cmd_ingest(const std::string& input, const std::string& output, double threshold) {
  nfr::RelevanceMatrix m = nfr::load_relevance(input, threshold);
  std::ostringstream out;
  nfr::write_relevance_csv(m, out);
  emit(output, out.str());
  int nonzero = 0;
  for (double v : m.scores)
    if (v != 0.0) ++nonzero;
  std::cerr << "ingested K=" << m.k << " nonzeros=" << nonzero << " threshold="
            << threshold << "\n";
  return kExitOk;
}

int cmd_bsr(const CommonOptions& common, const std::string& output) {
  nfr::ScenarioConfig cfg = load_config(common);
  nfr::ProblemInstance inst = nfr::make_instance(cfg, load_matrix(common, cfg));
  std::ostringstream out;
  nfr::write_profile_csv(inst.profile, out);
  emit(output, out.str());
  return kExitOk;
}

int cmd_optimize(const CommonOptions& common, double b_flag, bool b_given,
                 const std::string& fairness_flag, double cf_flag, bool cf_given,
                 int cuts_flag, const std::string& cut_mode_flag, bool plain,
                 const std::string& mps_out, bool mps_free,
                 const std::string& output, long max_iter) {
  nfr::ScenarioConfig cfg = load_config(common);
  if (b_given) cfg.b = b_flag;
  if (cf_given) cfg.c_f = cf_flag;
  if (cuts_flag > 0) cfg.m_cuts = cuts_flag;
  if (!cut_mode_flag.empty()) cfg.cut_mode = nfr::cut_mode_from_string(cut_mode_flag);
  if (!fairness_flag.empty())
    cfg.fairness = nfr::fairness_kind_from_string(fairness_flag);
  cfg.validate();

  nfr::ProblemInstance inst = nfr::make_instance(cfg, load_matrix(common, cfg));

  nfr::BuiltLp built;
  nfr::FairnessSpec fairness;
  bool has_fairness = cfg.fairness != nfr::FairnessKind::none;
  if (plain) {
    built = nfr::build_nfr_lp(inst.relevance, inst.profile, cfg, inst.costs);
  } else {
    nfr::CutFamily cuts =
        nfr::make_cuts(nfr::cut_sampling_from_mode(cfg.cut_mode), cfg.m_cuts);
    if (has_fairness) {
      fairness.kind = cfg.fairness;
      fairness.c_f = cfg.c_f;
      built = nfr::build_fair_diverse_lp(inst.relevance, inst.profile, cfg, inst.costs,
                                         cuts, fairness);
    } else {
      built = nfr::build_diverse_lp(inst.relevance, inst.profile, cfg, inst.costs, cuts);
    }
  }
  if (!mps_out.empty()) nfr::write_mps_file(built.lp, mps_out, mps_free);

  nfr::DiverseSolution sol =
      nfr::solve_and_recover(built, inst.profile, cfg, 1e-9, max_iter);
  if (sol.report.status != nfr::SolveStatus::optimal) {
    std::cerr << "solver finished with status " << nfr::to_string(sol.report.status)
              << "\n";
    return kExitNoSolution;
  }
  nfr::ValidationReport validation =
      nfr::validate_solution(sol, inst.relevance, inst.profile, cfg, inst.costs,
                             inst.p0, has_fairness && !plain ? &fairness : nullptr);
  std::ostringstream out;
  nfr::write_solution_csv(sol, out);
  emit(output, out.str());
  std::cerr << "cost=" << sol.cost << " (BSR " << inst.profile.cost_bs << ")"
            << " entropy=" << sol.realized_entropy << " (BSR "
            << inst.profile.entropy_bs << ")"
            << " validation=" << (validation.ok ? "ok" : "FAILED") << "\n";
  for (const std::string& v : validation.violations) std::cerr << "  " << v << "\n";
  return validation.ok ? kExitOk : kExitNoSolution;
}

int cmd_simulate(const CommonOptions& common, const std::string& policy_name,
                 long long sessions, std::uint64_t seed, bool seed_given,
                 const std::string& trace_path) {
  nfr::ScenarioConfig cfg = load_config(common);
  nfr::ProblemInstance inst = nfr::make_instance(cfg, load_matrix(common, cfg));
  if (!seed_given) seed = cfg.seed;

  nfr::RecommendationPolicy policy;
  nfr::DemandDistribution closed_form;
  if (policy_name == "bsr") {
    policy = inst.profile.policy;
    closed_form = inst.profile.demand_bs;
  } else if (policy_name == "nfr" || policy_name == "diverse") {
    nfr::BuiltLp built;
    if (policy_name == "nfr") {
      built = nfr::build_nfr_lp(inst.relevance, inst.profile, cfg, inst.costs);
    } else {
      nfr::CutFamily cuts =
          nfr::make_cuts(nfr::cut_sampling_from_mode(cfg.cut_mode), cfg.m_cuts);
      built = nfr::build_diverse_lp(inst.relevance, inst.profile, cfg, inst.costs, cuts);
    }
    nfr::DiverseSolution sol = nfr::solve_and_recover(built, inst.profile, cfg);
    if (sol.report.status != nfr::SolveStatus::optimal) {
      std::cerr << "solver finished with status " << nfr::to_string(sol.report.status)
                << "\n";
      return kExitNoSolution;
    }
    policy = sol.policy;
    closed_form = sol.p_nf;
  } else {
    throw nfr::ConfigError("unknown --policy '" + policy_name + "'");
  }

  nfr::SimulationOptions options;
  options.record_traces = !trace_path.empty();
  nfr::SimulationResult sim =
      nfr::simulate_sessions(inst.p0, policy, cfg.alpha, cfg.n_rec, cfg.session_len,
                             sessions, seed, inst.costs, options);
  if (!trace_path.empty()) {
    std::ostringstream out;
    nfr::write_trace_csv(sim, inst.costs, out);
    emit(trace_path, out.str());
  }
  double tv = nfr::fairness_tv(sim.empirical, closed_form);
  double closed_cost = nfr::expected_cost(closed_form, inst.costs);
  std::printf("policy=%s steps=%lld tv_distance=%.6f cost_mc=%.6f cost_closed=%.6f\n",
              policy_name.c_str(), sim.total_steps, tv, sim.mean_cost, closed_cost);
  std::printf("entropy_mc=%.6f entropy_closed=%.6f\n",
              nfr::entropy_of_demand(sim.empirical), nfr::entropy_of_demand(closed_form));
  return kExitOk;
}

int cmd_sweep(const CommonOptions& common, const std::string& b_list_text,
              const std::string& cf_list_text, const std::string& kinds_text,
              bool fair_diverse, const std::string& output,
              const std::string& timings_path, const std::string& curve_path) {
  nfr::ScenarioConfig cfg = load_config(common);
  nfr::SweepRequest request;
  request.b_list = b_list_text.empty()
                       ? std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}
                       : parse_list(b_list_text);
  request.cf_list = parse_list(cf_list_text);
  request.kinds = parse_kinds(kinds_text);
  if (!request.cf_list.empty() && request.kinds.empty())
    request.kinds.push_back(cfg.fairness == nfr::FairnessKind::none
                                ? nfr::FairnessKind::max
                                : cfg.fairness);
  request.fair_diverse = fair_diverse;

  nfr::SweepResult result =
      nfr::run_scenario(cfg, load_matrix(common, cfg), request);
  std::ostringstream out;
  nfr::write_sweep_csv(result, out);
  emit(output, out.str());
  if (!timings_path.empty()) {
    std::ostringstream t;
    nfr::write_timings_csv(result, t);
    emit(timings_path, t.str());
  }
  if (!curve_path.empty()) emit(curve_path, nfr::tradeoff_curve_csv(result));
  for (const nfr::SweepRow& row : result.rows)
    if (row.status != "ok")
      std::cerr << "row " << row.algorithm << ": " << row.status << "\n";
  return kExitOk;
}

int cmd_report(const std::string& input, const std::string& output,
               const std::string& curve_path) {
  std::ifstream in(input);
  if (!in) throw nfr::IoError("cannot open sweep csv '" + input + "'");
  nfr::SweepResult result = nfr::read_sweep_csv(in);
  emit(output, nfr::render_report_table(result));
  if (!curve_path.empty()) emit(curve_path, nfr::tradeoff_curve_csv(result));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diverse and fair network-friendly recommendation programs"};
  app.require_subcommand(1);

  CommonOptions common;

  // ingest
  auto* ingest = app.add_subcommand("ingest", "normalize a relevance CSV");
  std::string ingest_in, ingest_out;
  double ingest_threshold = 0.5;
  ingest->add_option("-i,--input", ingest_in, "dense or triplet CSV")->required();
  ingest->add_option("-o,--output", ingest_out, "output path (default stdout)");
  ingest->add_option("--threshold", ingest_threshold, "zero scores below this");

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("-s,--scenario", common.scenario_path, "scenario key=value file")
        ->required();
    cmd->add_option("-U,--relevance", common.relevance_path,
                    "relevance CSV (default: synthesize from the scenario seed)");
    cmd->add_option("--density", common.density, "synthetic matrix density");
    cmd->add_option("--threshold", common.threshold, "relevance preprocessing threshold");
  };

  // bsr
  auto* bsr = app.add_subcommand("bsr", "baseline profile dump");
  add_common(bsr);
  std::string bsr_out;
  bsr->add_option("-o,--output", bsr_out, "profile CSV (default stdout)");

  // optimize
  auto* optimize = app.add_subcommand("optimize", "solve one program instance");
  add_common(optimize);
  double opt_b = 0.0, opt_cf = 0.0;
  int opt_cuts = 0;
  long opt_max_iter = -1;
  bool opt_plain = false;
  std::string opt_fairness, opt_cut_mode, opt_mps, opt_out;
  auto* b_opt = optimize->add_option("--b", opt_b, "entropy floor fraction");
  auto* cf_opt = optimize->add_option("--cf", opt_cf, "fairness budget");
  optimize->add_option("--fairness", opt_fairness, "none|max|tv|kl");
  optimize->add_option("--cuts", opt_cuts, "entropy cut count");
  optimize->add_option("--cut-mode", opt_cut_mode, "tangent|secant");
  optimize->add_flag("--plain", opt_plain, "cost-only program, no entropy block");
  optimize->add_option("--mps-out", opt_mps, "also export the program as MPS");
  bool opt_mps_free = false;
  optimize->add_flag("--mps-free", opt_mps_free, "free-format MPS numbers");
  optimize->add_option("-o,--output", opt_out, "solution CSV (default stdout)");
  optimize->add_option("--max-iter", opt_max_iter, "simplex iteration cap");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo session cross-check");
  add_common(simulate);
  std::string sim_policy = "bsr", sim_trace;
  long long sim_sessions = 1000;
  std::uint64_t sim_seed = 0;
  simulate->add_option("--policy", sim_policy, "bsr|nfr|diverse");
  simulate->add_option("--sessions", sim_sessions, "number of sessions");
  auto* seed_opt = simulate->add_option("--seed", sim_seed, "simulation seed");
  simulate->add_option("--trace", sim_trace, "dump session traces to CSV");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "scenario sweep over b and cf grids");
  add_common(sweep);
  std::string sweep_b, sweep_cf, sweep_kinds, sweep_out, sweep_timings, sweep_curve;
  bool sweep_fair_diverse = false;
  sweep->add_option("--b-list", sweep_b, "comma list of b values");
  sweep->add_option("--cf-list", sweep_cf, "comma list of cf values");
  sweep->add_option("--kinds", sweep_kinds, "comma list of fairness kinds");
  sweep->add_flag("--fair-diverse", sweep_fair_diverse, "also run the (b,cf) grid");
  sweep->add_option("-o,--output", sweep_out, "sweep CSV (default stdout)");
  sweep->add_option("--timings", sweep_timings, "solve-time CSV (non-deterministic)");
  sweep->add_option("--curve", sweep_curve, "trade-off curve CSV");

  // report
  auto* report = app.add_subcommand("report", "render a sweep CSV as a table");
  std::string report_in, report_out, report_curve;
  report->add_option("-i,--input", report_in, "sweep CSV")->required();
  report->add_option("-o,--output", report_out, "table text (default stdout)");
  report->add_option("--curve", report_curve, "trade-off curve CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(ingest))
      return cmd_ingest(ingest_in, ingest_out, ingest_threshold);
    if (app.got_subcommand(bsr)) return cmd_bsr(common, bsr_out);
    if (app.got_subcommand(optimize))
      return cmd_optimize(common, opt_b, b_opt->count() > 0, opt_fairness, opt_cf,
                          cf_opt->count() > 0, opt_cuts, opt_cut_mode, opt_plain,
                          opt_mps, opt_mps_free, opt_out, opt_max_iter);
    if (app.got_subcommand(simulate))
      return cmd_simulate(common, sim_policy, sim_sessions, sim_seed,
                          seed_opt->count() > 0, sim_trace);
    if (app.got_subcommand(sweep))
      return cmd_sweep(common, sweep_b, sweep_cf, sweep_kinds, sweep_fair_diverse,
                       sweep_out, sweep_timings, sweep_curve);
    if (app.got_subcommand(report)) return cmd_report(report_in, report_out, report_curve);
  } catch (const nfr::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const nfr::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNoSolution;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
