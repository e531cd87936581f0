#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aopc/instance.hpp"

namespace aopc {

/// Bounds for one probability interval [p_lo, p_hi] of the no-purchase
/// probability. The dual bound is the LP relaxation of a knapsack over the
/// active products with objective coefficients p_hi * r_j * v_j - c_j and
/// capacity 1/p_lo - 1 on the preference mass; the primal bound is the true
/// expected profit of the integrally packed prefix, which is feasible for the
/// original problem regardless of the interval. The critical product is the
/// first one (in ratio order) that no longer fits integrally.
struct IntervalBound {
  double p_lo = 0;
  double p_hi = 0;
  double dual = 0;
  double primal = 0;
  std::vector<std::uint8_t> primal_selection;  // length n, empty if not computed
  int critical_product = -1;                   // product id, -1 when the knapsack is not binding
  double critical_ratio = 0;                   // objective/weight ratio of the critical product
  std::vector<int> sorted_order;               // eligible products in non-increasing ratio order
};

/// State threaded through the Lagrangian multiplier scan used for the
/// cardinality-constrained dual bound. `lambda` is the best multiplier found
/// so far and warm-starts the next interval.
struct LagrangianState {
  double lambda = 0;
  double delta = 1e-5;  // fixed step size of the scan
  double last_bound = 0;
  std::uint64_t iterations = 0;
  bool step_capped = false;  // a scan hit the per-interval iteration cap
};

inline constexpr std::uint64_t kLagrangianIterationCap = 1'000'000;

/// Greedy-ratio LP relaxation: sort eligible products (positive coefficient)
/// by coefficient/weight ratio, pack integrally, take the critical product
/// fractionally. Ties in the ratio break toward the smaller product id, so
/// results are deterministic. Requires a normalized instance (v0 == 1),
/// 0 < p_lo <= p_hi <= 1 and `active` sorted ascending without duplicates.
IntervalBound dual_bound(const Instance& inst, double p_lo, double p_hi,
                         std::span<const int> active);

/// Same packing, but reports the true expected profit of the integral prefix
/// as a global lower bound. The prefix's own no-purchase probability may fall
/// outside [p_lo, p_hi]; the value is feasible either way.
IntervalBound primal_bound(const Instance& inst, double p_lo, double p_hi,
                           std::span<const int> active);

/// Dual bound under an additional cardinality constraint |x| <= kappa,
/// obtained by dualizing the constraint: bound(lambda) = lambda * kappa +
/// LP value with coefficients reduced by lambda. Starting from state.lambda
/// the scan moves in fixed steps of state.delta in whichever direction
/// strictly improves, stops at the first deterioration, and returns the best
/// bound seen. The iteration cap is reported through state.step_capped.
IntervalBound dual_bound_cardinality(const Instance& inst, double p_lo, double p_hi,
                                     std::span<const int> active, int kappa,
                                     LagrangianState& state);

/// Primal companion: the greedy fill stops as soon as kappa products are
/// packed.
IntervalBound primal_bound_cardinality(const Instance& inst, double p_lo, double p_hi,
                                       std::span<const int> active, int kappa);

/// Reusable interval evaluator. Keeps per-product scratch and the previous
/// ratio order; consecutive intervals of a fine grid rarely change the order,
/// so a linear sortedness check usually replaces the sort. Results are
/// bit-identical to a fresh sort because the comparison is a strict total
/// order (ratio, then product id).
class IntervalEvaluator {
 public:
  IntervalEvaluator(const Instance& inst, std::span<const int> active);

  void set_active(std::span<const int> active);

  struct Fill {
    double lp_value = 0;
    int critical_product = -1;
    double critical_ratio = 0;
    double critical_fraction = 0;
    int integral_count = 0;
    double integral_mass = 0;
    double integral_rv = 0;    // sum of r_j * v_j over the integral prefix
    double integral_cost = 0;  // sum of c_j over the integral prefix
  };

  /// LP fill with objective coefficients (p_hi * r_j - c_j / v_j - lambda / v_j) * v_j
  /// and the given capacity on the preference mass. Capacity <= 0 yields an
  /// empty fill with no critical product.
  const Fill& fill(double p_hi, double capacity, double lambda = 0.0);

  /// Product ids packed integrally by the last fill()/primal_fill(), in ratio order.
  std::span<const int> integral_items() const { return {fill_ids_.data(), fill_ids_.size()}; }

  const Fill& last_fill() const { return last_; }

  /// Eligible products (positive coefficient) of the last fill, ratio order.
  void eligible_order(std::vector<int>& out) const;

  /// Best Lagrangian bound for at most `kappa` products; see
  /// dual_bound_cardinality. Leaves the evaluator's fill at the best lambda.
  double cardinality_scan(double p_hi, double capacity, int kappa, LagrangianState& state);

  /// Integral greedy fill at lambda = 0 stopping at `kappa` products (pass a
  /// value >= active size for the unconstrained variant); returns the true
  /// expected profit of the packed prefix and exposes it via integral_items().
  double primal_fill(double p_hi, double capacity, int kappa);

  const Instance& instance() const { return *inst_; }
  std::span<const int> active() const { return {ids_.data(), ids_.size()}; }

  /// Per-product ratio keys of the last fill, parallel to active(). Together
  /// with the critical ratio they give exact sensitivity penalties: forcing
  /// product j against the LP's choice costs at least v_j * |key_j - ratio|.
  std::span<const double> item_keys() const { return {key_.data(), key_.size()}; }
  std::span<const double> item_weights() const { return {w_.data(), w_.size()}; }

 private:
  void compute_keys(double p_hi, double lambda);
  void ensure_sorted();

  const Instance* inst_;
  std::vector<int> ids_;
  std::vector<double> w_;     // v_j
  std::vector<double> rj_;    // r_j
  std::vector<double> cv_;    // c_j / v_j
  std::vector<double> iw_;    // 1 / v_j
  std::vector<double> rv_;    // r_j * v_j
  std::vector<double> cost_;  // c_j
  std::vector<double> key_;   // current ratios
  std::vector<int> order_;    // positions sorted by (key desc, id asc)
  std::vector<int> fill_ids_;
  Fill last_;
};

}  // namespace aopc
