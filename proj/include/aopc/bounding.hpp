#pragma once

#include <chrono>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "aopc/grid.hpp"
#include "aopc/knapsack.hpp"
#include "aopc/solve_types.hpp"

namespace aopc {

/// Compact per-interval data kept for every surviving interval (dual bound at
/// least the incumbent's value, up to a safety margin). The critical ratio and
/// the dual value are retained so the fixing rules can be applied later
/// without re-solving the interval LPs.
struct IntervalRecord {
  std::uint64_t k = 0;
  double p_lo = 0;
  double p_hi = 0;
  double dual = 0;
  double critical_ratio = 0;
  int critical_product = -1;
};

/// Closed probability range [lo, hi]; runs of adjacent surviving intervals
/// are merged into spans so fine grids never need per-interval storage.
struct Span {
  double lo = 0;
  double hi = 0;
};

struct BoundingResult;

/// Invoked after each completed stage with the stage's result and the current
/// active products; returns product ids that are provably in no optimal
/// selection and should be dropped before the next stage.
using FixingHook =
    std::function<std::vector<int>(const BoundingResult&, std::span<const int> active)>;

struct BoundingOptions {
  std::optional<int> kappa;
  double delta = 1e-5;  // Lagrangian step for the cardinality-constrained case
  FixingHook fixing_hook;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  // Stop refining once ub - lb <= gap_tolerance * max(1, |lb|). Zero forces
  // the ladder all the way down to rho_last.
  double gap_tolerance = 1e-9;
  // Surviving-candidate buffers are compacted against the running lower bound
  // once they grow past this size. If compaction cannot shrink the buffer the
  // per-interval records are dropped for that stage (the spans and the window
  // are kept; reduced-cost fixing simply has nothing to work with then).
  std::size_t record_soft_cap = std::size_t{1} << 21;
};

struct BoundingResult {
  double lb = 0;
  double ub = std::numeric_limits<double>::infinity();
  std::vector<std::uint8_t> incumbent;  // best selection found, length n
  std::vector<IntervalRecord> records;  // surviving intervals, p descending
  std::vector<Span> spans;              // merged surviving ranges, descending
  double window_lo = 0;
  double window_hi = 1;
  std::uint64_t intervals_evaluated = 0;  // cumulative over all stages
  double rho_final = 0;
  std::vector<StageSummary> stages;
  std::vector<int> active_remaining;
  // Warm multiplier for the cardinality bound near the window's upper end;
  // useful as a starting point for search on top of these results.
  double lambda_warm = 0;
  bool lagrangian_step_capped = false;
  // True when the final stage had more survivors than record_soft_cap, in
  // which case records is empty while spans/window stay valid.
  bool records_overflowed = false;
  bool timed_out = false;

  BoundingSummary summary() const;
};

/// Evaluates dual and primal bounds on every interval of `grid` and keeps the
/// surviving ones. Equivalent to a one-stage sequential_bound.
BoundingResult full_grid_bound(const Instance& inst, const GridSpec& grid,
                               const BoundingOptions& opts = {});

/// Multi-stage refinement: starts with a full sweep at rho_first, then
/// divides rho by 10 (ending exactly at rho_last) and re-evaluates only the
/// fine intervals that intersect the surviving spans of the previous stage.
/// The lower bound and incumbent carry forward monotonically; the fixing hook
/// runs after every stage. Interval selection uses closed spans with 1e-12
/// slack plus a stage margin that covers fine intervals straddling a coarse
/// grid point, so the final upper bound equals the full fine-grid bound.
BoundingResult sequential_bound(const Instance& inst, double rho_first, double rho_last,
                                const BoundingOptions& opts = {});

}  // namespace aopc
