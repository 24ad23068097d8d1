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

#ifndef NFR_LP_HPP_
#define NFR_LP_HPP_

#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace nfr {

inline constexpr double kLpInfinity = std::numeric_limits<double>::infinity();

// Solver tolerances, all in one place.
// - kFeasTol: bound/row violation accepted as feasible.
// - The `tol` argument of solve() is the reduced-cost (optimality) test.
inline constexpr double kFeasTol = 1e-7;
inline constexpr double kPivotTol = 1e-9;

enum class Relation { le, eq, ge };
enum class SolveStatus { optimal, infeasible, unbounded, iteration_limit };

const char* to_string(SolveStatus status);

struct LpEntry {
  int index;     // column index in a row view, row index in a column view
  double value;
};

// Sparse minimization LP with named variable blocks and relational rows.
// Build, then seal(); sealed programs are immutable and safe to share.
class LinearProgram {
 public:
  // Declares `count` variables named prefix+zero-padded-ordinal (8 chars
  // total); returns the first column index.
  int add_block(const std::string& prefix, int count, double lb, double ub);
  int add_variable(double lb, double ub) { return add_block("X", 1, lb, ub); }

  void set_bounds(int col, double lb, double ub);
  void fix_variable(int col, double value) { set_bounds(col, value, value); }
  void set_objective(int col, double coefficient);

  int add_row(Relation rel, double rhs);
  void add_coefficient(int row, int col, double value);

  // Validates invariants (declared columns, finite right-hand sides, no
  // duplicate (row, column) pairs) and freezes the program.
  void seal();
  bool sealed() const { return sealed_; }

  int num_vars() const { return static_cast<int>(lower_.size()); }
  int num_rows() const { return static_cast<int>(rhs_.size()); }
  double lower(int col) const { return lower_[col]; }
  double upper(int col) const { return upper_[col]; }
  double objective(int col) const { return objective_[col]; }
  Relation relation(int row) const { return relation_[row]; }
  double rhs(int row) const { return rhs_[row]; }

  std::span<const LpEntry> row(int r) const;     // entries (col, value)
  std::span<const LpEntry> column(int c) const;  // entries (row, value), needs seal()

  std::string col_name(int col) const;
  std::string row_name(int row) const;

  double objective_value(std::span<const double> x) const;
  // Worst violation over rows and variable bounds at the point x.
  double max_violation(std::span<const double> x) const;

 private:
  struct Block {
    std::string prefix;
    int base;
    int count;
  };

  bool sealed_ = false;
  std::vector<Block> blocks_;
  std::vector<double> lower_, upper_, objective_;
  std::vector<Relation> relation_;
  std::vector<double> rhs_;
  std::vector<std::vector<LpEntry>> rows_;
  // column-major mirror, built by seal()
  std::vector<int> col_start_;
  std::vector<LpEntry> col_entries_;
};

struct SolveReport {
  SolveStatus status = SolveStatus::iteration_limit;
  double objective_value = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> primal;  // one value per declared variable
  long iterations = 0;
  double max_constraint_violation = 0.0;
};

// Two-phase primal simplex over bounded variables with one logical column
// per row. Dantzig pricing with a switch to Bland's rule after stalling;
// product-form basis updates over a dense LU of the structural part of the
// basis, periodically refactorized. Deterministic: identical programs give
// identical pivot sequences.
SolveReport solve(const LinearProgram& lp, double tol = 1e-9, long max_iter = -1);

struct OracleResult {
  SolveStatus status = SolveStatus::infeasible;
  double objective = std::numeric_limits<double>::quiet_NaN();
};

// Test oracle: enumerates every choice of n active constraints (rows and
// finite bounds), keeps the feasible basic points, returns the best
// objective. Only for tiny programs (refuses > 12 variables); assumes the
// optimum, when the program is feasible, is attained at some vertex (always
// true with boxed variables).
OracleResult vertex_oracle(const LinearProgram& lp);

// Fixed-format MPS (ROWS/COLUMNS/RHS/RANGES/BOUNDS). Objective row is
// named COST; names come from the block encoding so they fit 8 characters.
void write_mps(const LinearProgram& lp, std::ostream& out, bool free_format = false);
void write_mps_file(const LinearProgram& lp, const std::string& path,
                    bool free_format = false);

}  // namespace nfr

#endif  // NFR_LP_HPP_
