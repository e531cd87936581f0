#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "aopc/instance.hpp"

namespace aopc {

struct LpExportOptions {
  // Optional probability window for the no-purchase variable u0; both bounds
  // must be given together.
  std::optional<double> window_lo;
  std::optional<double> window_hi;
  // Optional cap on the number of offered products.
  std::optional<int> kappa;
};

/// Writes the mixed-integer linear formulation in CPLEX LP file format.
///
/// Variables: binary x1..xn (product offered) and continuous u0..un (choice
/// probabilities). Objective: maximize sum_j (r_j u_j - c_j x_j).
/// Rows: for each product j, ratio_j (v0 u_j - v_j u0 <= 0) and force_j
/// (u_j - v_j/(v0+v_j) x_j <= 0), plus the convexity row u0 + sum u_j = 1,
/// giving 2n+1 structural constraints. A window adds a bound entry on u0 and
/// a cardinality cap adds one more row. Coefficients are printed with 17
/// significant digits so a parser recovers them bit-exactly.
void write_lp(const Instance& inst, std::ostream& os,
              const LpExportOptions& opts = {});
std::string write_lp_string(const Instance& inst, const LpExportOptions& opts = {});
void write_lp_file(const Instance& inst, const std::string& path,
                   const LpExportOptions& opts = {});

}  // namespace aopc
