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

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>
#include <string>

#include "nfr/errors.hpp"
#include "nfr/lp.hpp"

namespace nfr {

namespace {

// Fixed-format fields start at columns 2, 5, 15, 25, 40, 50 (1-based) with
// widths 2, 8, 8, 12, 8, 12.
void emit(std::ostream& out, const char* f1, const std::string& f2,
          const std::string& f3 = "", const std::string& f4 = "",
          const std::string& f5 = "", const std::string& f6 = "") {
  char line[128];
  std::snprintf(line, sizeof(line), " %-2s %-8s  %-8s  %-12s   %-8s  %-12s", f1,
                f2.c_str(), f3.c_str(), f4.c_str(), f5.c_str(), f6.c_str());
  // trim trailing blanks
  int len = static_cast<int>(std::strlen(line));
  while (len > 0 && line[len - 1] == ' ') --len;
  out.write(line, len);
  out.put('\n');
}

std::string fixed_number(double v, bool free_format) {
  char buf[40];
  if (free_format) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  if (std::strlen(buf) > 12) std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void write_mps(const LinearProgram& lp, std::ostream& out, bool free_format) {
  if (!lp.sealed()) throw ConfigError("write_mps: program must be sealed");
  out << "NAME          NFROPT\n";
  out << "ROWS\n";
  emit(out, "N", "COST");
  for (int r = 0; r < lp.num_rows(); ++r) {
    const char* type = "E";
    if (lp.relation(r) == Relation::le) type = "L";
    else if (lp.relation(r) == Relation::ge) type = "G";
    emit(out, type, lp.row_name(r));
  }
  out << "COLUMNS\n";
  for (int c = 0; c < lp.num_vars(); ++c) {
    const std::string name = lp.col_name(c);
    if (lp.objective(c) != 0.0)
      emit(out, "", name, "COST", fixed_number(lp.objective(c), free_format));
    for (const LpEntry& e : lp.column(c))
      emit(out, "", name, lp.row_name(e.index), fixed_number(e.value, free_format));
  }
  out << "RHS\n";
  for (int r = 0; r < lp.num_rows(); ++r)
    if (lp.rhs(r) != 0.0)
      emit(out, "", "RHS", lp.row_name(r), fixed_number(lp.rhs(r), free_format));
  // Relational rows carry a single right-hand side, so no row is ranged;
  // the section is kept for fixed-format readers that expect it.
  out << "RANGES\n";
  out << "BOUNDS\n";
  for (int c = 0; c < lp.num_vars(); ++c) {
    const std::string name = lp.col_name(c);
    double lb = lp.lower(c), ub = lp.upper(c);
    bool lb_inf = !(lb > -kLpInfinity);
    bool ub_inf = !(ub < kLpInfinity);
    if (!lb_inf && !ub_inf && lb == ub) {
      emit(out, "FX", "BND", name, fixed_number(lb, free_format));
      continue;
    }
    if (lb_inf && ub_inf) {
      emit(out, "FR", "BND", name);
      continue;
    }
    if (lb_inf) emit(out, "MI", "BND", name);
    else if (lb != 0.0) emit(out, "LO", "BND", name, fixed_number(lb, free_format));
    if (!ub_inf) emit(out, "UP", "BND", name, fixed_number(ub, free_format));
  }
  out << "ENDATA\n";
}

void write_mps_file(const LinearProgram& lp, const std::string& path,
                    bool free_format) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_mps(lp, out, free_format);
  out.flush();
  if (!out) throw IoError("failed writing MPS file '" + path + "'");
}

}  // namespace nfr
