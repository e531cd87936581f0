#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace aopc {

struct InstanceMeta {
  double phi = 0;
  double gamma = 0;
  std::uint64_t seed = 0;
};

/// An assortment pricing instance under the multinomial logit model:
/// n products with revenue r_j > 0, offering cost c_j >= 0 and preference
/// weight v_j > 0, plus the no-purchase weight v0 >= 0.
struct Instance {
  int n = 0;
  double v0 = 1.0;
  std::vector<double> revenue;
  std::vector<double> cost;
  std::vector<double> preference;
  std::optional<InstanceMeta> meta;

  double preference_sum() const;

  /// True when v0 is 1 within `tol`, i.e. the instance has been normalized.
  bool is_normalized(double tol = 1e-12) const;
};

/// Throws std::invalid_argument if sizes or sign constraints are violated.
void validate(const Instance& inst);

/// Expected profit of a selection x in {0,1}^n:
///   sum_j r_j v_j x_j / (v0 + sum_j v_j x_j) - sum_j c_j x_j.
/// The empty selection yields 0, including when v0 == 0.
double expected_profit(const Instance& inst, std::span<const std::uint8_t> selection);

/// Divides all preference weights (and v0) by v0 so that v0 == 1.
/// Revenues and costs are unchanged; profits of every selection are preserved.
/// Throws std::domain_error when v0 == 0.
Instance normalize(const Instance& inst);

/// A selection together with its preference mass and profit, kept consistent
/// with the instance it was built from.
struct Assortment {
  std::vector<std::uint8_t> selection;
  double preference_mass = 0;
  double profit = 0;
};

Assortment make_assortment(const Instance& inst, std::vector<std::uint8_t> selection);

}  // namespace aopc
