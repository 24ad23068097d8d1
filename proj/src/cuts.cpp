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

#include "nfr/errors.hpp"
#include "nfr/optimizer.hpp"

namespace nfr {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

double CutFamily::envelope(double x) const {
  double best = -kLpInfinity;
  for (const CutLine& line : lines)
    best = std::max(best, line.slope * x + line.intercept);
  return best;
}

CutFamily make_cuts(CutSampling mode, int count, double step) {
  if (count < 1) throw ConfigError("make_cuts: need at least one cut");
  if (mode == CutSampling::tangent_exponential && !(step > 0.0))
    throw ConfigError("make_cuts: exponential sampling needs a positive step");

  CutFamily family;
  family.mode = mode;
  family.count = count;
  family.step = step;
  family.lines.reserve(count);

  switch (mode) {
    case CutSampling::tangent_linear:
      // Tangent at x_m = m/M: slope 1 + ln x_m, intercept -x_m.
      for (int m = 1; m <= count; ++m) {
        double x = static_cast<double>(m) / count;
        family.lines.push_back({1.0 + std::log(x), -x, x});
      }
      break;
    case CutSampling::tangent_exponential:
      // Tangent at x_m = e^{-(m-1)s}: slope 1 - (m-1)s, intercept -x_m.
      for (int m = 1; m <= count; ++m) {
        double e = static_cast<double>(m - 1) * step;
        family.lines.push_back({1.0 - e, -std::exp(-e), std::exp(-e)});
      }
      break;
    case CutSampling::secant:
      // Chords of g over the uniform grid 0, 1/M, ..., 1; the max of the
      // chords dominates g on [0,1].
      for (int m = 1; m <= count; ++m) {
        double x0 = static_cast<double>(m - 1) / count;
        double x1 = static_cast<double>(m) / count;
        double slope = (xlogx(x1) - xlogx(x0)) / (x1 - x0);
        family.lines.push_back({slope, xlogx(x0) - slope * x0, x1});
      }
      break;
  }
  return family;
}

CutSampling cut_sampling_from_mode(CutMode mode) {
  return mode == CutMode::tangent ? CutSampling::tangent_linear : CutSampling::secant;
}

}  // namespace nfr
