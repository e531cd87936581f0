#include "aopc/instance.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aopc {

double Instance::preference_sum() const {
  double s = 0;
  for (double v : preference) s += v;
  return s;
}

bool Instance::is_normalized(double tol) const { return std::abs(v0 - 1.0) <= tol; }

void validate(const Instance& inst) {
  if (inst.n < 1) throw std::invalid_argument("instance needs at least one product");
  const auto n = static_cast<std::size_t>(inst.n);
  if (inst.revenue.size() != n || inst.cost.size() != n || inst.preference.size() != n)
    throw std::invalid_argument("instance arrays must all have length n");
  if (!(inst.v0 >= 0) || !std::isfinite(inst.v0))
    throw std::invalid_argument("v0 must be finite and non-negative");
  for (std::size_t j = 0; j < n; ++j) {
    if (!(inst.revenue[j] > 0) || !std::isfinite(inst.revenue[j]))
      throw std::invalid_argument("revenue must be positive at index " + std::to_string(j));
    if (!(inst.cost[j] >= 0) || !std::isfinite(inst.cost[j]))
      throw std::invalid_argument("cost must be non-negative at index " + std::to_string(j));
    if (!(inst.preference[j] > 0) || !std::isfinite(inst.preference[j]))
      throw std::invalid_argument("preference must be positive at index " + std::to_string(j));
  }
}

double expected_profit(const Instance& inst, std::span<const std::uint8_t> selection) {
  if (selection.size() != static_cast<std::size_t>(inst.n))
    throw std::invalid_argument("selection length must equal n");
  double rv = 0, mass = 0, cost = 0;
  bool any = false;
  for (int j = 0; j < inst.n; ++j) {
    if (!selection[j]) continue;
    any = true;
    rv += inst.revenue[j] * inst.preference[j];
    mass += inst.preference[j];
    cost += inst.cost[j];
  }
  if (!any) return 0.0;
  return rv / (inst.v0 + mass) - cost;
}

Instance normalize(const Instance& inst) {
  validate(inst);
  if (inst.v0 == 0) throw std::domain_error("cannot normalize an instance with v0 == 0");
  Instance out = inst;
  for (double& v : out.preference) v /= inst.v0;
  out.v0 = 1.0;
  return out;
}

Assortment make_assortment(const Instance& inst, std::vector<std::uint8_t> selection) {
  Assortment a;
  a.profit = expected_profit(inst, selection);
  a.preference_mass = 0;
  for (int j = 0; j < inst.n; ++j)
    if (selection[j]) a.preference_mass += inst.preference[j];
  a.selection = std::move(selection);
  return a;
}

}  // namespace aopc
