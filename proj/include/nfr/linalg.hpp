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

#ifndef NFR_LINALG_HPP_
#define NFR_LINALG_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace nfr {

// Dense LU factorization with partial pivoting, row-major storage.
// Small systems only (catalog-scale K and simplex working bases).
class DenseLu {
 public:
  DenseLu() = default;

  // Factors an n-by-n matrix given in row-major order. Returns false when a
  // pivot falls below `singular_tol` (matrix treated as singular).
  bool factor(std::size_t n, std::span<const double> matrix,
              double singular_tol = 1e-12);

  // Solves A x = b in place. factor() must have succeeded.
  void solve(std::span<double> b) const;

  // Solves A^T x = b in place.
  void solve_transposed(std::span<double> b) const;

  std::size_t size() const { return n_; }
  bool ok() const { return ok_; }

 private:
  std::size_t n_ = 0;
  bool ok_ = false;
  std::vector<double> lu_;        // packed L (unit diagonal) and U
  std::vector<std::size_t> perm_; // row permutation
};

// Neumaier compensated summation; keeps K ~ 1e4 probability sums well inside
// the 1e-12 normalization budget.
double stable_sum(std::span<const double> values);

// max_i |a_i - b_i| convenience used by tests and validators.
double max_abs_diff(std::span<const double> a, std::span<const double> b);

}  // namespace nfr

#endif  // NFR_LINALG_HPP_
