#pragma once

#include <optional>

#include "aopc/bounding.hpp"
#include "aopc/instance.hpp"
#include "aopc/solve_types.hpp"

namespace aopc {

struct SolveParams {
  double rho_first = 1e-2;
  double rho_last = 1e-7;
  std::optional<int> kappa;  // maximum number of offered products
  double delta = 1e-5;       // Lagrangian step for the cardinality bound
  double time_limit_seconds = 600.0;
  // Absolute slack for pruning search nodes; the bounding gap is considered
  // closed when ub - lb <= tolerance * max(1, |lb|).
  double tolerance = 1e-9;
  // Accept incumbents only inside the union of surviving spans instead of
  // their convex hull. Same optimum either way; kept as an option.
  bool restrict_to_union = false;
  bool enable_fixing = true;
};

/// Exact solver: normalizes the instance, runs the sequential grid bounding
/// procedure with variable fixing, and closes any remaining gap with a
/// depth-first branch and bound whose node relaxation is the interval
/// knapsack bound restricted to the surviving probability window.
SolveResult solve(const Instance& inst, const SolveParams& params = {});

}  // namespace aopc
