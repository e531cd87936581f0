#pragma once

#include <span>
#include <vector>

#include "aopc/bounding.hpp"
#include "aopc/instance.hpp"

namespace aopc {

/// Strict inequalities in both rules are applied with this guard band, so a
/// product is only fixed when the condition holds by a clear margin.
inline constexpr double kFixingGuard = 1e-12;

/// Products whose objective coefficient is negative even at the largest
/// surviving no-purchase probability: p_window_hi * r_j * v_j - c_j < 0.
/// Such products lower the profit of any selection containing them.
std::vector<int> fix_rule1(const Instance& inst, double p_window_hi, std::span<const int> active);

/// Reduced-cost fixing. Product j is fixed when, for every surviving
/// interval, (i) its ratio is below the interval's critical ratio and
/// (ii) the interval dual plus the penalty for forcing j in drops below lb:
///   dual + (p_hi r_j v_j - c_j) - v_j * critical_ratio < lb.
/// An interval without a critical product certifies nothing, so one such
/// record blocks all rule-2 fixing. Not valid under a cardinality
/// constraint; callers disable it when kappa is active.
std::vector<int> fix_rule2(const Instance& inst, std::span<const IntervalRecord> records,
                           double lb, std::span<const int> active);

}  // namespace aopc
