#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace aopc {

enum class SolveStatus {
  kOptimal,
  kTimeLimit,
  // No candidate probability window survived bounding. This cannot happen for
  // a valid instance (the incumbent's own interval always survives) and is
  // surfaced as a loud failure rather than silently returning garbage.
  kInfeasibleWindow,
};

struct StageSummary {
  double rho = 0;
  std::uint64_t grid_size = 0;  // number of intervals in the stage's grid
  double lb = 0;
  double ub = std::numeric_limits<double>::infinity();
  std::uint64_t evaluated = 0;  // intervals whose bounds were computed
  std::uint64_t surviving = 0;
  int fixed = 0;  // products removed after this stage
};

struct BoundingSummary {
  double lb = 0;
  double ub = std::numeric_limits<double>::infinity();
  double window_lo = 0;
  double window_hi = 1;
  std::uint64_t intervals_evaluated = 0;
  double rho_final = 0;
  std::vector<StageSummary> stages;
  bool lagrangian_step_capped = false;
};

struct FixingReport {
  std::vector<int> fixed_out;  // product ids removed from consideration
  int by_rule1 = 0;
  int by_rule2 = 0;
  int active_remaining = 0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kOptimal;
  std::vector<std::uint8_t> best_selection;
  double best_profit = 0;
  double proven_ub = std::numeric_limits<double>::infinity();
  std::uint64_t nodes_explored = 0;
  double wall_time_seconds = 0;
  BoundingSummary bounding;
  FixingReport fixing;
};

}  // namespace aopc
