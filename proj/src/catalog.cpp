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

#include "nfr/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <vector>

#include "nfr/errors.hpp"
#include "nfr/linalg.hpp"
#include "nfr/rng.hpp"

namespace nfr {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string strip(const std::string& s) {
  std::size_t first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  std::size_t last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_score(const std::string& token, const std::string& origin, int line_no) {
  std::string t = strip(token);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ParseError(origin + ":" + std::to_string(line_no) + ": bad value '" + t + "'");
  }
  if (used != t.size())
    throw ParseError(origin + ":" + std::to_string(line_no) + ": bad value '" + t + "'");
  if (!(v >= 0.0 && v <= 1.0))
    throw DomainError(origin + ":" + std::to_string(line_no) + ": score " +
                      std::to_string(v) + " outside [0,1]");
  return v;
}

long parse_index(const std::string& token, const std::string& origin, int line_no) {
  std::string t = strip(token);
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(t, &used);
  } catch (const std::exception&) {
    throw ParseError(origin + ":" + std::to_string(line_no) + ": bad index '" + t + "'");
  }
  if (used != t.size() || v < 1)
    throw ParseError(origin + ":" + std::to_string(line_no) + ": bad index '" + t + "'");
  return v;
}

bool is_triplet_header(const std::string& line) {
  auto fields = split_csv_line(line);
  return fields.size() == 3 && strip(fields[0]) == "i" && strip(fields[1]) == "j" &&
         strip(fields[2]) == "u";
}

RelevanceMatrix parse_dense(const std::vector<std::string>& lines,
                            const std::vector<int>& line_numbers,
                            const std::string& origin) {
  const int k = static_cast<int>(lines.size());
  RelevanceMatrix m;
  m.k = k;
  m.scores.assign(static_cast<std::size_t>(k) * k, 0.0);
  for (int i = 0; i < k; ++i) {
    auto fields = split_csv_line(lines[i]);
    if (static_cast<int>(fields.size()) != k)
      throw ShapeError(origin + ":" + std::to_string(line_numbers[i]) + ": row has " +
                       std::to_string(fields.size()) + " columns, expected " +
                       std::to_string(k) + " (input must be square)");
    for (int j = 0; j < k; ++j)
      m.at(i, j) = parse_score(fields[j], origin, line_numbers[i]);
  }
  return m;
}

RelevanceMatrix parse_triplets(const std::vector<std::string>& lines,
                               const std::vector<int>& line_numbers,
                               const std::string& origin) {
  struct Entry {
    int i, j;
    double u;
    int line;
  };
  std::vector<Entry> entries;
  long max_index = 0;
  for (std::size_t r = 0; r < lines.size(); ++r) {
    auto fields = split_csv_line(lines[r]);
    if (fields.size() != 3)
      throw ParseError(origin + ":" + std::to_string(line_numbers[r]) +
                       ": expected 3 fields i,j,u");
    long i = parse_index(fields[0], origin, line_numbers[r]);
    long j = parse_index(fields[1], origin, line_numbers[r]);
    double u = parse_score(fields[2], origin, line_numbers[r]);
    max_index = std::max({max_index, i, j});
    entries.push_back({static_cast<int>(i), static_cast<int>(j), u, line_numbers[r]});
  }
  if (max_index < 2) throw ShapeError(origin + ": triplet input implies K < 2");
  const int k = static_cast<int>(max_index);
  RelevanceMatrix m;
  m.k = k;
  m.scores.assign(static_cast<std::size_t>(k) * k, 0.0);
  std::vector<char> seen(m.scores.size(), 0);
  for (const Entry& e : entries) {
    std::size_t idx = static_cast<std::size_t>(e.i - 1) * k + (e.j - 1);
    if (seen[idx])
      throw ParseError(origin + ":" + std::to_string(e.line) + ": duplicate entry (" +
                       std::to_string(e.i) + "," + std::to_string(e.j) + ")");
    seen[idx] = 1;
    m.scores[idx] = e.u;
  }
  return m;
}

}  // namespace

RelevanceMatrix preprocess_relevance(RelevanceMatrix m, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw ConfigError("relevance threshold must lie in [0,1]");
  for (int i = 0; i < m.k; ++i) {
    for (int j = 0; j < m.k; ++j) {
      double& v = m.at(i, j);
      if (i == j || v < threshold) v = 0.0;
    }
  }
  return m;
}

RelevanceMatrix parse_relevance_csv(std::istream& in, double threshold,
                                    const std::string& origin) {
  std::vector<std::string> lines;
  std::vector<int> line_numbers;
  std::string line;
  int line_no = 0;
  bool triplet = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = strip(line);
    if (t.empty() || t[0] == '#') continue;
    if (lines.empty() && line_numbers.empty() && is_triplet_header(t)) {
      triplet = true;
      continue;
    }
    lines.push_back(t);
    line_numbers.push_back(line_no);
  }
  if (lines.empty()) throw ParseError(origin + ": no data rows");
  RelevanceMatrix m =
      triplet ? parse_triplets(lines, line_numbers, origin) : parse_dense(lines, line_numbers, origin);
  m = preprocess_relevance(std::move(m), threshold);
  m.validate();
  return m;
}

RelevanceMatrix load_relevance(const std::string& path, double threshold) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open relevance file '" + path + "'");
  return parse_relevance_csv(in, threshold, path);
}

void write_relevance_csv(const RelevanceMatrix& m, std::ostream& out) {
  char buf[48];
  for (int i = 0; i < m.k; ++i) {
    for (int j = 0; j < m.k; ++j) {
      std::snprintf(buf, sizeof(buf), "%.12g", m.at(i, j));
      out << buf << (j + 1 == m.k ? "\n" : ",");
    }
  }
}

RelevanceMatrix synth_relevance(int k, double density, std::uint64_t seed) {
  if (k < 2) throw ConfigError("synth_relevance: K must be at least 2");
  if (!(density > 0.0 && density <= 1.0))
    throw ConfigError("synth_relevance: density must lie in (0,1]");
  RelevanceMatrix m;
  m.k = k;
  m.scores.assign(static_cast<std::size_t>(k) * k, 0.0);
  Rng rng(seed);
  for (int i = 0; i < k; ++i) {
    while (true) {
      int nonzero = 0;
      for (int j = 0; j < k; ++j) {
        if (j == i) {
          m.at(i, j) = 0.0;
          continue;
        }
        if (rng.next_double() < density) {
          m.at(i, j) = 0.5 + 0.5 * rng.next_double();
          ++nonzero;
        } else {
          m.at(i, j) = 0.0;
        }
      }
      if (nonzero >= 1) break;  // redraw empty rows
    }
  }
  return m;
}

DemandDistribution zipf_direct_demand(int k, double pop) {
  if (k < 1) throw ConfigError("zipf_direct_demand: K must be positive");
  if (!(pop >= 0.0)) throw ConfigError("zipf_direct_demand: pop must be non-negative");
  DemandDistribution d;
  d.probs.resize(k);
  for (int i = 0; i < k; ++i)
    d.probs[i] = std::pow(static_cast<double>(i + 1), -pop);
  double total = stable_sum(d.probs);
  for (double& v : d.probs) v /= total;
  // Second normalization pass keeps the compensated sum at 1 to ~1 ulp even
  // for K = 10^4.
  total = stable_sum(d.probs);
  for (double& v : d.probs) v /= total;
  return d;
}

CostVector build_costs(const DemandDistribution& demand_bs, int cache_size,
                       CostMode mode, const CostVector* custom) {
  const int k = demand_bs.size();
  if (cache_size < 0 || cache_size > k)
    throw ConfigError("build_costs: need 0 <= C <= K");
  if (mode == CostMode::custom) {
    if (custom == nullptr)
      throw ConfigError("build_costs: custom mode requires a cost vector");
    if (custom->size() != k) throw ShapeError("build_costs: custom vector length mismatch");
    custom->validate();
    return *custom;
  }
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (demand_bs.probs[a] != demand_bs.probs[b])
      return demand_bs.probs[a] > demand_bs.probs[b];
    return a < b;
  });
  CostVector c;
  c.costs.assign(k, 1.0);
  for (int r = 0; r < cache_size; ++r) c.costs[order[r]] = 0.0;
  return c;
}

}  // namespace nfr
