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

#include "nfr/types.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nfr/errors.hpp"
#include "nfr/linalg.hpp"

namespace nfr {

void RelevanceMatrix::validate() const {
  if (k <= 0 || scores.size() != static_cast<std::size_t>(k) * k)
    throw ShapeError("relevance matrix: storage does not match catalog size");
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      double v = at(i, j);
      if (!(v >= 0.0 && v <= 1.0))
        throw DomainError("relevance matrix: score out of [0,1] at (" +
                          std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      if (i == j && v != 0.0)
        throw DomainError("relevance matrix: nonzero diagonal at item " +
                          std::to_string(i + 1));
    }
  }
}

void CostVector::validate() const {
  for (double v : costs)
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("cost vector: entry out of [0,1]");
}

void DemandDistribution::validate(double sum_tol) const {
  for (double v : probs)
    if (!(v >= 0.0)) throw DomainError("demand distribution: negative entry");
  double sum = stable_sum(probs);
  if (std::abs(sum - 1.0) > sum_tol)
    throw DomainError("demand distribution: sum " + std::to_string(sum) +
                      " not within tolerance of 1");
}

void RecommendationPolicy::validate(int n_rec, double row_tol) const {
  if (k <= 0 || rows.size() != static_cast<std::size_t>(k) * k)
    throw ShapeError("recommendation policy: storage does not match catalog size");
  for (int i = 0; i < k; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < k; ++j) {
      double v = at(i, j);
      if (!(v >= 0.0 && v <= 1.0))
        throw DomainError("recommendation policy: entry out of [0,1]");
      if (i == j && v != 0.0)
        throw DomainError("recommendation policy: nonzero diagonal");
      row_sum += v;
    }
    if (std::abs(row_sum - n_rec) > row_tol)
      throw DomainError("recommendation policy: row " + std::to_string(i + 1) +
                        " sums to " + std::to_string(row_sum));
  }
}

const char* to_string(FairnessKind kind) {
  switch (kind) {
    case FairnessKind::none: return "none";
    case FairnessKind::max: return "max";
    case FairnessKind::tv: return "tv";
    case FairnessKind::kl: return "kl";
  }
  return "?";
}

const char* to_string(CutMode mode) {
  return mode == CutMode::tangent ? "tangent" : "secant";
}

FairnessKind fairness_kind_from_string(const std::string& text) {
  if (text == "none") return FairnessKind::none;
  if (text == "max") return FairnessKind::max;
  if (text == "tv") return FairnessKind::tv;
  if (text == "kl") return FairnessKind::kl;
  throw ConfigError("unknown fairness kind '" + text + "'");
}

CutMode cut_mode_from_string(const std::string& text) {
  if (text == "tangent") return CutMode::tangent;
  if (text == "secant") return CutMode::secant;
  throw ConfigError("unknown cut mode '" + text + "'");
}

void ScenarioConfig::validate() const {
  if (k < 2) throw ConfigError("scenario: K must be at least 2");
  if (n_rec < 1 || n_rec >= k) throw ConfigError("scenario: need 1 <= N < K");
  if (cache_size < 0 || cache_size > k) throw ConfigError("scenario: need 0 <= C <= K");
  if (session_len < 1) throw ConfigError("scenario: L must be positive");
  if (m_cuts < 1) throw ConfigError("scenario: M must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("scenario: alpha must lie in (0,1)");
  if (!(q > 0.0 && q <= 1.0)) throw ConfigError("scenario: q must lie in (0,1]");
  if (!(b >= 0.0 && b <= 1.0)) throw ConfigError("scenario: b must lie in [0,1]");
  if (!(pop >= 0.0)) throw ConfigError("scenario: pop must be non-negative");
  if (!(c_f >= 0.0)) throw ConfigError("scenario: cf must be non-negative");
}

std::string ScenarioConfig::id() const {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "K%dN%dC%da%.2fp%.2fq%.2fs%llu", k, n_rec,
                cache_size, alpha, pop, q, static_cast<unsigned long long>(seed));
  return buf;
}

namespace {

double parse_real(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double parsed = 0.0;
  try {
    parsed = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ParseError("scenario key '" + key + "': bad number '" + value + "'");
  }
  if (used != value.size())
    throw ParseError("scenario key '" + key + "': bad number '" + value + "'");
  return parsed;
}

long long parse_integer(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long long parsed = 0;
  try {
    parsed = std::stoll(value, &used);
  } catch (const std::exception&) {
    throw ParseError("scenario key '" + key + "': bad integer '" + value + "'");
  }
  if (used != value.size())
    throw ParseError("scenario key '" + key + "': bad integer '" + value + "'");
  return parsed;
}

std::string trimmed(const std::string& s) {
  std::size_t first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  std::size_t last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

ScenarioConfig parse_scenario_text(const std::string& text) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trimmed(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError("scenario line " + std::to_string(line_no) + ": expected key=value");
    std::string key = trimmed(t.substr(0, eq));
    std::string value = trimmed(t.substr(eq + 1));
    if (key == "K") cfg.k = static_cast<int>(parse_integer(key, value));
    else if (key == "N") cfg.n_rec = static_cast<int>(parse_integer(key, value));
    else if (key == "C") cfg.cache_size = static_cast<int>(parse_integer(key, value));
    else if (key == "L") cfg.session_len = static_cast<int>(parse_integer(key, value));
    else if (key == "M") cfg.m_cuts = static_cast<int>(parse_integer(key, value));
    else if (key == "alpha") cfg.alpha = parse_real(key, value);
    else if (key == "pop") cfg.pop = parse_real(key, value);
    else if (key == "q") cfg.q = parse_real(key, value);
    else if (key == "b") cfg.b = parse_real(key, value);
    else if (key == "cf") cfg.c_f = parse_real(key, value);
    else if (key == "fairness") cfg.fairness = fairness_kind_from_string(value);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_integer(key, value));
    else if (key == "cut_mode") cfg.cut_mode = cut_mode_from_string(value);
    else throw ConfigError("scenario line " + std::to_string(line_no) +
                           ": unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

std::string scenario_to_text(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "K=" << cfg.k << "\nN=" << cfg.n_rec << "\nC=" << cfg.cache_size
      << "\nL=" << cfg.session_len << "\nalpha=" << cfg.alpha << "\npop=" << cfg.pop
      << "\nq=" << cfg.q << "\nb=" << cfg.b << "\ncf=" << cfg.c_f
      << "\nfairness=" << to_string(cfg.fairness) << "\nseed=" << cfg.seed
      << "\nM=" << cfg.m_cuts << "\ncut_mode=" << to_string(cfg.cut_mode) << "\n";
  return out.str();
}

}  // namespace nfr
