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

#include "nfr/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace nfr {

bool DenseLu::factor(std::size_t n, std::span<const double> matrix,
                     double singular_tol) {
  n_ = n;
  ok_ = false;
  lu_.assign(matrix.begin(), matrix.end());
  perm_.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot_row = col;
    double pivot_mag = std::abs(lu_[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      double mag = std::abs(lu_[r * n + col]);
      if (mag > pivot_mag) {
        pivot_mag = mag;
        pivot_row = r;
      }
    }
    if (pivot_mag < singular_tol) return false;
    if (pivot_row != col) {
      for (std::size_t j = 0; j < n; ++j)
        std::swap(lu_[col * n + j], lu_[pivot_row * n + j]);
      std::swap(perm_[col], perm_[pivot_row]);
    }
    const double pivot = lu_[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      double factor = lu_[r * n + col] / pivot;
      lu_[r * n + col] = factor;
      if (factor == 0.0) continue;
      for (std::size_t j = col + 1; j < n; ++j)
        lu_[r * n + j] -= factor * lu_[col * n + j];
    }
  }
  ok_ = true;
  return true;
}

void DenseLu::solve(std::span<double> b) const {
  const std::size_t n = n_;
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = b[perm_[i]];
  // Forward substitution with unit lower triangle.
  for (std::size_t i = 0; i < n; ++i) {
    double acc = y[i];
    for (std::size_t j = 0; j < i; ++j) acc -= lu_[i * n + j] * y[j];
    y[i] = acc;
  }
  // Back substitution with U.
  for (std::size_t ii = n; ii-- > 0;) {
    double acc = y[ii];
    for (std::size_t j = ii + 1; j < n; ++j) acc -= lu_[ii * n + j] * y[j];
    y[ii] = acc / lu_[ii * n + ii];
  }
  std::copy(y.begin(), y.end(), b.begin());
}

void DenseLu::solve_transposed(std::span<double> b) const {
  // A = P^T L U  =>  A^T = U^T L^T P. Solve U^T z = b, L^T w = z, x = P^T w.
  const std::size_t n = n_;
  std::vector<double> z(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    double acc = z[i];
    for (std::size_t j = 0; j < i; ++j) acc -= lu_[j * n + i] * z[j];
    z[i] = acc / lu_[i * n + i];
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double acc = z[ii];
    for (std::size_t j = ii + 1; j < n; ++j) acc -= lu_[j * n + ii] * z[j];
    z[ii] = acc;
  }
  for (std::size_t i = 0; i < n; ++i) b[perm_[i]] = z[i];
}

double stable_sum(std::span<const double> values) {
  double sum = 0.0;
  double compensation = 0.0;
  for (double v : values) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      compensation += (sum - t) + v;
    else
      compensation += (v - t) + sum;
    sum = t;
  }
  return sum + compensation;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace nfr
