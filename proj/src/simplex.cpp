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

#include <algorithm>
#include <cmath>
#include <vector>

#include "nfr/errors.hpp"
#include "nfr/linalg.hpp"
#include "nfr/lp.hpp"

// Bounded-variable primal simplex. Each row gets one logical column, so the
// all-logical basis is always available; phase 1 minimizes the total bound
// violation of the basic variables (composite objective), phase 2 the true
// cost. The basis inverse is kept as a product of eta matrices over a base
// factorization that exploits the structure of desk-scale programs: most
// basic columns are logical unit columns, so only the structural block (at
// most one column per structural variable) needs a dense LU.

namespace nfr {

namespace {

enum class VarState : unsigned char { basic, at_lower, at_upper, free_zero };

constexpr double kDropTol = 1e-14;   // eta entries below this are discarded
constexpr int kRefactorEvery = 64;   // eta chain length bound
constexpr int kStallLimit = 200;     // iterations without improvement before Bland

class Simplex {
 public:
  Simplex(const LinearProgram& lp, double opt_tol, long max_iter)
      : lp_(lp),
        opt_tol_(opt_tol),
        m_(lp.num_rows()),
        n_struct_(lp.num_vars()),
        n_total_(lp.num_rows() + lp.num_vars()) {
    max_iter_ = max_iter > 0 ? max_iter : 50L * (m_ + n_total_) + 10000L;
    init_variables();
    init_basis();
  }

  SolveReport run();

 private:
  struct Eta {
    int pos;
    double pivot;
    std::vector<LpEntry> entries;  // position-indexed sparse w, incl. pivot
  };

  const LinearProgram& lp_;
  double opt_tol_;
  long max_iter_;
  int m_, n_struct_, n_total_;

  std::vector<double> lb_, ub_, cost_;
  std::vector<VarState> state_;
  std::vector<double> nb_value_;

  std::vector<int> basis_;    // position -> variable
  std::vector<double> xb_;    // position -> basic value

  DenseLu lu_;
  std::vector<int> qrows_;         // dense index -> row
  std::vector<int> qrow_index_;    // row -> dense index or -1
  std::vector<int> struct_slots_;  // slot -> position
  std::vector<int> slot_var_;      // slot -> structural variable
  std::vector<int> pos_logical_;   // row -> position of covering basic logical or -1
  std::vector<Eta> etas_;

  long iterations_ = 0;
  bool bland_ = false;
  int stall_count_ = 0;
  int last_phase_ = 0;
  double best_measure_ = kLpInfinity;

  // scratch
  std::vector<double> work_rhs_, work_pos_, work_y_, work_cb_;

  int logical_of_row(int row) const { return n_struct_ + row; }
  bool is_logical(int var) const { return var >= n_struct_; }

  template <class Fn>
  void for_each_entry(int var, Fn&& fn) const {
    if (var < n_struct_) {
      for (const LpEntry& e : lp_.column(var)) fn(e.index, e.value);
    } else {
      fn(var - n_struct_, 1.0);
    }
  }

  void init_variables() {
    lb_.resize(n_total_);
    ub_.resize(n_total_);
    cost_.assign(n_total_, 0.0);
    state_.assign(n_total_, VarState::at_lower);
    nb_value_.assign(n_total_, 0.0);
    for (int j = 0; j < n_struct_; ++j) {
      lb_[j] = lp_.lower(j);
      ub_[j] = lp_.upper(j);
      cost_[j] = lp_.objective(j);
    }
    for (int r = 0; r < m_; ++r) {
      int j = logical_of_row(r);
      switch (lp_.relation(r)) {
        case Relation::le: lb_[j] = 0.0; ub_[j] = kLpInfinity; break;
        case Relation::ge: lb_[j] = -kLpInfinity; ub_[j] = 0.0; break;
        case Relation::eq: lb_[j] = 0.0; ub_[j] = 0.0; break;
      }
    }
    for (int j = 0; j < n_total_; ++j) {
      if (lb_[j] > -kLpInfinity) {
        state_[j] = VarState::at_lower;
        nb_value_[j] = lb_[j];
      } else if (ub_[j] < kLpInfinity) {
        state_[j] = VarState::at_upper;
        nb_value_[j] = ub_[j];
      } else {
        state_[j] = VarState::free_zero;
        nb_value_[j] = 0.0;
      }
    }
  }

  void init_basis() {
    basis_.resize(m_);
    for (int r = 0; r < m_; ++r) {
      basis_[r] = logical_of_row(r);
      state_[logical_of_row(r)] = VarState::basic;
    }
    refactor();
  }

  void refactor() {
    qrow_index_.assign(m_, -1);
    pos_logical_.assign(m_, -1);
    struct_slots_.clear();
    slot_var_.clear();
    for (int p = 0; p < m_; ++p) {
      int var = basis_[p];
      if (is_logical(var)) {
        pos_logical_[var - n_struct_] = p;
      } else {
        struct_slots_.push_back(p);
        slot_var_.push_back(var);
      }
    }
    const int k = static_cast<int>(struct_slots_.size());
    qrows_.clear();
    qrows_.reserve(k);
    for (int r = 0; r < m_; ++r)
      if (pos_logical_[r] < 0) {
        qrow_index_[r] = static_cast<int>(qrows_.size());
        qrows_.push_back(r);
      }
    std::vector<double> dense(static_cast<std::size_t>(k) * k, 0.0);
    for (int t = 0; t < k; ++t)
      for (const LpEntry& e : lp_.column(slot_var_[t])) {
        int qi = qrow_index_[e.index];
        if (qi >= 0) dense[static_cast<std::size_t>(qi) * k + t] = e.value;
      }
    if (!lu_.factor(k, dense))
      throw NumericalError("simplex: basis factorization failed");
    etas_.clear();
    compute_xb();
  }

  // B x_B = rhs - N x_N for the current nonbasic values.
  void compute_xb() {
    work_rhs_.assign(m_, 0.0);
    for (int r = 0; r < m_; ++r) work_rhs_[r] = lp_.rhs(r);
    for (int j = 0; j < n_total_; ++j) {
      if (state_[j] == VarState::basic) continue;
      double v = nb_value_[j];
      if (v == 0.0) continue;
      for_each_entry(j, [&](int row, double a) { work_rhs_[row] -= a * v; });
    }
    xb_.assign(m_, 0.0);
    ftran(work_rhs_, xb_);
  }

  // rhs is row-indexed; result is position-indexed.
  void ftran(const std::vector<double>& rhs, std::vector<double>& result) {
    const int k = static_cast<int>(struct_slots_.size());
    std::vector<double> zs(k);
    for (int t = 0; t < k; ++t) zs[t] = rhs[qrows_[t]];
    if (k > 0) lu_.solve(zs);
    result.assign(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      int p = pos_logical_[r];
      if (p >= 0) result[p] = rhs[r];
    }
    for (int t = 0; t < k; ++t) {
      double z = zs[t];
      if (z != 0.0) {
        for (const LpEntry& e : lp_.column(slot_var_[t])) {
          int p = pos_logical_[e.index];
          if (p >= 0) result[p] -= e.value * z;
        }
      }
      result[struct_slots_[t]] = z;
    }
    for (const Eta& eta : etas_) {
      double scale = result[eta.pos] / eta.pivot;
      if (scale != 0.0) {
        for (const LpEntry& e : eta.entries)
          if (e.index != eta.pos) result[e.index] -= e.value * scale;
      }
      result[eta.pos] = scale;
    }
  }

  // c is position-indexed (consumed); result is row-indexed.
  void btran(std::vector<double>& c, std::vector<double>& result) {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double dot = 0.0;
      for (const LpEntry& e : it->entries) dot += e.value * c[e.index];
      c[it->pos] -= (dot - c[it->pos]) / it->pivot;
    }
    const int k = static_cast<int>(struct_slots_.size());
    result.assign(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      int p = pos_logical_[r];
      if (p >= 0) result[r] = c[p];
    }
    std::vector<double> rs(k);
    for (int t = 0; t < k; ++t) {
      double acc = c[struct_slots_[t]];
      for (const LpEntry& e : lp_.column(slot_var_[t])) {
        if (pos_logical_[e.index] >= 0) acc -= e.value * result[e.index];
      }
      rs[t] = acc;
    }
    if (k > 0) lu_.solve_transposed(rs);
    for (int t = 0; t < k; ++t) result[qrows_[t]] = rs[t];
  }

  double total_infeasibility() const {
    double sum = 0.0;
    for (int p = 0; p < m_; ++p) {
      int var = basis_[p];
      double v = xb_[p];
      if (v < lb_[var]) sum += lb_[var] - v;
      else if (v > ub_[var]) sum += v - ub_[var];
    }
    return sum;
  }

  bool any_infeasible() const {
    for (int p = 0; p < m_; ++p) {
      int var = basis_[p];
      if (xb_[p] < lb_[var] - kFeasTol || xb_[p] > ub_[var] + kFeasTol) return true;
    }
    return false;
  }

  double current_objective() const {
    double acc = 0.0;
    for (int p = 0; p < m_; ++p) {
      int var = basis_[p];
      if (var < n_struct_) acc += cost_[var] * xb_[p];
    }
    for (int j = 0; j < n_struct_; ++j)
      if (state_[j] != VarState::basic) acc += cost_[j] * nb_value_[j];
    return acc;
  }

  void assemble(std::vector<double>& x) const {
    x.assign(n_struct_, 0.0);
    for (int j = 0; j < n_struct_; ++j)
      if (state_[j] != VarState::basic) x[j] = nb_value_[j];
    for (int p = 0; p < m_; ++p)
      if (basis_[p] < n_struct_) x[basis_[p]] = xb_[p];
  }

  SolveReport finalize(SolveStatus status) {
    if (status == SolveStatus::optimal || status == SolveStatus::iteration_limit)
      refactor();  // exact basic values for the reported point
    SolveReport report;
    report.status = status;
    report.iterations = iterations_;
    assemble(report.primal);
    report.max_constraint_violation = lp_.max_violation(report.primal);
    if (status == SolveStatus::optimal || status == SolveStatus::iteration_limit)
      report.objective_value = lp_.objective_value(report.primal);
    else if (status == SolveStatus::unbounded)
      report.objective_value = -kLpInfinity;
    return report;
  }

  void track_progress(int phase, double measure) {
    if (phase != last_phase_) {
      last_phase_ = phase;
      best_measure_ = measure;
      stall_count_ = 0;
      bland_ = false;
      return;
    }
    if (measure < best_measure_ - 1e-10 * (1.0 + std::abs(best_measure_))) {
      best_measure_ = measure;
      stall_count_ = 0;
      bland_ = false;
    } else if (++stall_count_ > kStallLimit) {
      bland_ = true;
    }
  }
};

SolveReport Simplex::run() {
  int optimal_restarts = 0;
  std::vector<double> col_rhs(m_), w(m_);
  std::vector<int> w_nonzeros;
  std::vector<double> y;

  while (true) {
    if (iterations_ >= max_iter_) return finalize(SolveStatus::iteration_limit);

    const int phase = any_infeasible() ? 1 : 2;
    track_progress(phase, phase == 1 ? total_infeasibility() : current_objective());

    // Pricing vector: phase 1 uses the infeasibility gradient of the basics.
    work_cb_.assign(m_, 0.0);
    for (int p = 0; p < m_; ++p) {
      int var = basis_[p];
      if (phase == 1) {
        if (xb_[p] < lb_[var] - kFeasTol) work_cb_[p] = -1.0;
        else if (xb_[p] > ub_[var] + kFeasTol) work_cb_[p] = 1.0;
      } else {
        work_cb_[p] = var < n_struct_ ? cost_[var] : 0.0;
      }
    }
    btran(work_cb_, y);

    // Entering variable.
    int enter = -1;
    int enter_dir = 0;
    double best_score = opt_tol_;
    for (int j = 0; j < n_total_; ++j) {
      VarState st = state_[j];
      if (st == VarState::basic) continue;
      if (lb_[j] == ub_[j]) continue;  // fixed variables never move
      double d = (phase == 2 && j < n_struct_) ? cost_[j] : 0.0;
      if (j < n_struct_) {
        for (const LpEntry& e : lp_.column(j)) d -= y[e.index] * e.value;
      } else {
        d -= y[j - n_struct_];
      }
      int dir = 0;
      if (st == VarState::at_lower && d < -opt_tol_) dir = 1;
      else if (st == VarState::at_upper && d > opt_tol_) dir = -1;
      else if (st == VarState::free_zero && std::abs(d) > opt_tol_) dir = d < 0.0 ? 1 : -1;
      if (dir == 0) continue;
      if (bland_) {
        enter = j;
        enter_dir = dir;
        break;  // lowest index
      }
      if (std::abs(d) > best_score) {
        best_score = std::abs(d);
        enter = j;
        enter_dir = dir;
      }
    }
    if (enter < 0) {
      if (phase == 1) return finalize(SolveStatus::infeasible);
      SolveReport report = finalize(SolveStatus::optimal);
      if (report.max_constraint_violation <= kFeasTol || optimal_restarts >= 2)
        return report;
      ++optimal_restarts;  // rare: drift detected, resume with fresh factors
      continue;
    }

    // Pivot column in position space.
    std::fill(col_rhs.begin(), col_rhs.end(), 0.0);
    for_each_entry(enter, [&](int row, double a) { col_rhs[row] = a; });
    ftran(col_rhs, w);
    w_nonzeros.clear();
    for (int p = 0; p < m_; ++p)
      if (std::abs(w[p]) > kDropTol) w_nonzeros.push_back(p);

    // Ratio test. The entering variable moves by t >= 0 in direction
    // enter_dir; basic p changes at rate -enter_dir * w[p]. In phase 1 a
    // basic already outside its bounds blocks only when it reaches the
    // violated bound, which is also where it turns feasible.
    double t_min = kLpInfinity;
    int leave_pos = -1;  // -1 with finite t_min means a bound flip
    int leave_hit_upper = 0;
    if (lb_[enter] > -kLpInfinity && ub_[enter] < kLpInfinity)
      t_min = ub_[enter] - lb_[enter];
    for (int idx : w_nonzeros) {
      double wp = w[idx];
      if (std::abs(wp) <= kPivotTol) continue;
      double rate = -enter_dir * wp;
      int var = basis_[idx];
      double v = xb_[idx];
      double l = lb_[var], u = ub_[var];
      double t_p;
      int hit_upper;
      if (phase == 1 && v < l - kFeasTol) {
        if (rate <= kPivotTol) continue;
        t_p = (l - v) / rate;
        hit_upper = 0;
      } else if (phase == 1 && v > u + kFeasTol) {
        if (rate >= -kPivotTol) continue;
        t_p = (u - v) / rate;
        hit_upper = 1;
      } else if (rate > kPivotTol) {
        if (u >= kLpInfinity) continue;
        t_p = (u - v) / rate;
        hit_upper = 1;
      } else if (rate < -kPivotTol) {
        if (l <= -kLpInfinity) continue;
        t_p = (v - l) / (-rate);
        hit_upper = 0;
      } else {
        continue;
      }
      if (t_p < 0.0) t_p = 0.0;
      bool take = false;
      if (t_p < t_min - 1e-12) {
        take = true;
      } else if (t_p <= t_min + 1e-12 && leave_pos >= 0) {
        if (bland_) {
          take = basis_[idx] < basis_[leave_pos];
        } else {
          take = std::abs(wp) > std::abs(w[leave_pos]);
        }
      } else if (t_p <= t_min + 1e-12 && leave_pos < 0 && t_min == kLpInfinity) {
        take = true;
      } else if (t_p <= t_min + 1e-12 && leave_pos < 0) {
        // ties against the entering bound flip: prefer the pivot
        take = true;
      }
      if (take) {
        t_min = std::min(t_min, t_p);
        leave_pos = idx;
        leave_hit_upper = hit_upper;
      }
    }

    if (t_min >= kLpInfinity) {
      if (phase == 2) return finalize(SolveStatus::unbounded);
      // No breakpoint in phase 1 means the pivot column went numerically
      // stale; rebuild and retry once per eta chain.
      if (!etas_.empty()) {
        refactor();
        continue;
      }
      throw NumericalError("simplex: lost phase-1 breakpoint");
    }

    const double delta = enter_dir * t_min;
    for (int idx : w_nonzeros) xb_[idx] -= w[idx] * delta;

    if (leave_pos < 0) {
      // Bound flip: the entering variable jumps to its opposite bound.
      state_[enter] =
          state_[enter] == VarState::at_lower ? VarState::at_upper : VarState::at_lower;
      nb_value_[enter] = state_[enter] == VarState::at_lower ? lb_[enter] : ub_[enter];
    } else {
      int leaving = basis_[leave_pos];
      state_[leaving] = leave_hit_upper ? VarState::at_upper : VarState::at_lower;
      nb_value_[leaving] = leave_hit_upper ? ub_[leaving] : lb_[leaving];
      double enter_value = nb_value_[enter] + delta;
      Eta eta;
      eta.pos = leave_pos;
      eta.pivot = w[leave_pos];
      eta.entries.reserve(w_nonzeros.size());
      for (int idx : w_nonzeros) eta.entries.push_back({idx, w[idx]});
      etas_.push_back(std::move(eta));
      basis_[leave_pos] = enter;
      state_[enter] = VarState::basic;
      xb_[leave_pos] = enter_value;
      if (static_cast<int>(etas_.size()) >= kRefactorEvery) refactor();
    }
    ++iterations_;
  }
}

}  // namespace

SolveReport solve(const LinearProgram& lp, double tol, long max_iter) {
  if (!lp.sealed()) throw ConfigError("solve: program must be sealed");
  if (!(tol > 0.0)) throw ConfigError("solve: tolerance must be positive");
  Simplex simplex(lp, tol, max_iter);
  return simplex.run();
}

}  // namespace nfr
