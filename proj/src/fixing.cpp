#include "aopc/fixing.hpp"

namespace aopc {

std::vector<int> fix_rule1(const Instance& inst, double p_window_hi,
                           std::span<const int> active) {
  std::vector<int> fixed;
  for (int j : active) {
    const double coef = p_window_hi * inst.revenue[j] * inst.preference[j] - inst.cost[j];
    if (coef < -kFixingGuard) fixed.push_back(j);
  }
  return fixed;
}

std::vector<int> fix_rule2(const Instance& inst, std::span<const IntervalRecord> records,
                           double lb, std::span<const int> active) {
  std::vector<int> fixed;
  if (records.empty()) return fixed;
  for (const IntervalRecord& rec : records)
    if (rec.critical_product < 0) return fixed;

  for (int j : active) {
    const double rv = inst.revenue[j] * inst.preference[j];
    const double v = inst.preference[j];
    bool all = true;
    for (const IntervalRecord& rec : records) {
      if (rec.critical_product == j) {
        all = false;
        break;
      }
      const double coef = rec.p_hi * rv - inst.cost[j];
      if (!(coef / v < rec.critical_ratio - kFixingGuard)) {
        all = false;
        break;
      }
      if (!(rec.dual + coef - v * rec.critical_ratio < lb - kFixingGuard)) {
        all = false;
        break;
      }
    }
    if (all) fixed.push_back(j);
  }
  return fixed;
}

}  // namespace aopc
