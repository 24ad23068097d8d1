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

#include "nfr/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "nfr/errors.hpp"

namespace nfr {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::iteration_limit: return "iteration_limit";
  }
  return "?";
}

int LinearProgram::add_block(const std::string& prefix, int count, double lb,
                             double ub) {
  if (sealed_) throw ConfigError("lp: cannot add variables after seal()");
  if (count < 1) throw ConfigError("lp: block count must be positive");
  if (prefix.empty() || prefix.size() > 2)
    throw ConfigError("lp: block prefix must be 1-2 characters");
  if (lb > ub) throw ConfigError("lp: lower bound above upper bound");
  int base = num_vars();
  blocks_.push_back({prefix, base, count});
  lower_.insert(lower_.end(), count, lb);
  upper_.insert(upper_.end(), count, ub);
  objective_.insert(objective_.end(), count, 0.0);
  return base;
}

void LinearProgram::set_bounds(int col, double lb, double ub) {
  if (sealed_) throw ConfigError("lp: cannot edit a sealed program");
  if (col < 0 || col >= num_vars()) throw ConfigError("lp: unknown variable");
  if (lb > ub) throw ConfigError("lp: lower bound above upper bound");
  lower_[col] = lb;
  upper_[col] = ub;
}

void LinearProgram::set_objective(int col, double coefficient) {
  if (sealed_) throw ConfigError("lp: cannot edit a sealed program");
  if (col < 0 || col >= num_vars()) throw ConfigError("lp: unknown variable");
  if (!std::isfinite(coefficient)) throw ConfigError("lp: objective must be finite");
  objective_[col] = coefficient;
}

int LinearProgram::add_row(Relation rel, double rhs) {
  if (sealed_) throw ConfigError("lp: cannot add rows after seal()");
  if (!std::isfinite(rhs)) throw ConfigError("lp: right-hand side must be finite");
  relation_.push_back(rel);
  rhs_.push_back(rhs);
  rows_.emplace_back();
  return num_rows() - 1;
}

void LinearProgram::add_coefficient(int row, int col, double value) {
  if (sealed_) throw ConfigError("lp: cannot edit a sealed program");
  if (row < 0 || row >= num_rows()) throw ConfigError("lp: unknown row");
  if (col < 0 || col >= num_vars())
    throw ConfigError("lp: coefficient references undeclared variable");
  if (!std::isfinite(value)) throw ConfigError("lp: coefficient must be finite");
  rows_[row].push_back({col, value});
}

void LinearProgram::seal() {
  if (sealed_) return;
  // Sort row entries and reject duplicate (row, column) pairs.
  for (int r = 0; r < num_rows(); ++r) {
    auto& entries = rows_[r];
    std::sort(entries.begin(), entries.end(),
              [](const LpEntry& a, const LpEntry& b) { return a.index < b.index; });
    for (std::size_t t = 1; t < entries.size(); ++t)
      if (entries[t].index == entries[t - 1].index)
        throw ConfigError("lp: duplicate coefficient in row " + std::to_string(r) +
                          " for variable " + std::to_string(entries[t].index));
  }
  // Column-major mirror.
  col_start_.assign(num_vars() + 1, 0);
  std::size_t nnz = 0;
  for (const auto& entries : rows_) nnz += entries.size();
  for (const auto& entries : rows_)
    for (const LpEntry& e : entries) ++col_start_[e.index + 1];
  for (int c = 0; c < num_vars(); ++c) col_start_[c + 1] += col_start_[c];
  col_entries_.resize(nnz);
  std::vector<int> cursor(col_start_.begin(), col_start_.end() - 1);
  for (int r = 0; r < num_rows(); ++r)
    for (const LpEntry& e : rows_[r])
      col_entries_[cursor[e.index]++] = {r, e.value};
  sealed_ = true;
}

std::span<const LpEntry> LinearProgram::row(int r) const {
  return {rows_[r].data(), rows_[r].size()};
}

std::span<const LpEntry> LinearProgram::column(int c) const {
  if (!sealed_) throw ConfigError("lp: column view requires seal()");
  return {col_entries_.data() + col_start_[c],
          static_cast<std::size_t>(col_start_[c + 1] - col_start_[c])};
}

std::string LinearProgram::col_name(int col) const {
  for (const Block& b : blocks_) {
    if (col >= b.base && col < b.base + b.count) {
      char buf[24];
      int digits = b.prefix.size() == 1 ? 7 : 6;
      std::snprintf(buf, sizeof(buf), "%s%0*d", b.prefix.c_str(), digits, col - b.base);
      return buf;
    }
  }
  throw ConfigError("lp: unknown variable");
}

std::string LinearProgram::row_name(int row) const {
  if (row < 0 || row >= num_rows()) throw ConfigError("lp: unknown row");
  char buf[16];
  std::snprintf(buf, sizeof(buf), "R%07d", row);
  return buf;
}

double LinearProgram::objective_value(std::span<const double> x) const {
  double acc = 0.0;
  for (int c = 0; c < num_vars(); ++c) acc += objective_[c] * x[c];
  return acc;
}

double LinearProgram::max_violation(std::span<const double> x) const {
  double worst = 0.0;
  for (int c = 0; c < num_vars(); ++c) {
    if (lower_[c] > -kLpInfinity) worst = std::max(worst, lower_[c] - x[c]);
    if (upper_[c] < kLpInfinity) worst = std::max(worst, x[c] - upper_[c]);
  }
  for (int r = 0; r < num_rows(); ++r) {
    double activity = 0.0;
    for (const LpEntry& e : rows_[r]) activity += e.value * x[e.index];
    switch (relation_[r]) {
      case Relation::le: worst = std::max(worst, activity - rhs_[r]); break;
      case Relation::ge: worst = std::max(worst, rhs_[r] - activity); break;
      case Relation::eq: worst = std::max(worst, std::abs(activity - rhs_[r])); break;
    }
  }
  return worst;
}

}  // namespace nfr
