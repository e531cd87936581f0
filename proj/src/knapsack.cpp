#include "aopc/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace aopc {

namespace {

void check_interval_args(const Instance& inst, double p_lo, double p_hi) {
  if (!inst.is_normalized()) throw std::invalid_argument("interval bounds need a normalized instance");
  if (!(p_lo > 0 && p_lo <= p_hi && p_hi <= 1))
    throw std::invalid_argument("need 0 < p_lo <= p_hi <= 1");
}

}  // namespace

IntervalEvaluator::IntervalEvaluator(const Instance& inst, std::span<const int> active)
    : inst_(&inst) {
  validate(inst);
  if (!inst.is_normalized())
    throw std::invalid_argument("IntervalEvaluator needs a normalized instance");
  set_active(active);
}

void IntervalEvaluator::set_active(std::span<const int> active) {
  const int n = inst_->n;
  ids_.assign(active.begin(), active.end());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i] < 0 || ids_[i] >= n) throw std::invalid_argument("active product id out of range");
    if (i > 0 && ids_[i] <= ids_[i - 1])
      throw std::invalid_argument("active ids must be sorted and unique");
  }
  const std::size_t m = ids_.size();
  w_.resize(m);
  rj_.resize(m);
  cv_.resize(m);
  iw_.resize(m);
  rv_.resize(m);
  cost_.resize(m);
  key_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const int j = ids_[i];
    w_[i] = inst_->preference[j];
    rj_[i] = inst_->revenue[j];
    cv_[i] = inst_->cost[j] / inst_->preference[j];
    iw_[i] = 1.0 / inst_->preference[j];
    rv_[i] = inst_->revenue[j] * inst_->preference[j];
    cost_[i] = inst_->cost[j];
  }
  order_.resize(m);
  std::iota(order_.begin(), order_.end(), 0);
}

void IntervalEvaluator::compute_keys(double p_hi, double lambda) {
  // key = coefficient / weight = p_hi * r_j - c_j / v_j - lambda / v_j.
  const std::size_t m = ids_.size();
  if (lambda == 0.0) {
    for (std::size_t i = 0; i < m; ++i) key_[i] = p_hi * rj_[i] - cv_[i];
  } else {
    for (std::size_t i = 0; i < m; ++i) key_[i] = p_hi * rj_[i] - cv_[i] - lambda * iw_[i];
  }
}

void IntervalEvaluator::ensure_sorted() {
  // Positions are in ascending product-id order, so comparing positions
  // breaks exact ratio ties toward the smaller id.
  const auto cmp = [this](int a, int b) {
    if (key_[a] != key_[b]) return key_[a] > key_[b];
    return a < b;
  };
  if (!std::is_sorted(order_.begin(), order_.end(), cmp))
    std::sort(order_.begin(), order_.end(), cmp);
}

const IntervalEvaluator::Fill& IntervalEvaluator::fill(double p_hi, double capacity,
                                                       double lambda) {
  last_ = Fill{};
  fill_ids_.clear();
  if (ids_.empty()) return last_;
  compute_keys(p_hi, lambda);
  ensure_sorted();
  if (capacity <= 0) return last_;
  double used = 0;
  for (int pos : order_) {
    const double k = key_[pos];
    if (k <= 0) break;
    const double v = w_[pos];
    if (used + v <= capacity) {
      used += v;
      last_.lp_value += k * v;
      last_.integral_mass += v;
      last_.integral_rv += rv_[pos];
      last_.integral_cost += cost_[pos];
      ++last_.integral_count;
      fill_ids_.push_back(ids_[pos]);
    } else {
      const double frac = (capacity - used) / v;
      last_.lp_value += frac * k * v;
      last_.critical_product = ids_[pos];
      last_.critical_ratio = k;
      last_.critical_fraction = frac;
      break;
    }
  }
  return last_;
}

void IntervalEvaluator::eligible_order(std::vector<int>& out) const {
  out.clear();
  for (int pos : order_) {
    if (key_[pos] <= 0) break;
    out.push_back(ids_[pos]);
  }
}

double IntervalEvaluator::cardinality_scan(double p_hi, double capacity, int kappa,
                                           LagrangianState& state) {
  if (kappa < 0) throw std::invalid_argument("kappa must be non-negative");
  if (kappa == 0) {
    // Only the empty selection is allowed, whose LP value is exactly 0.
    state.last_bound = 0;
    fill(p_hi, 0, state.lambda);
    return 0;
  }
  const auto eval = [&](double lambda) {
    return lambda * kappa + fill(p_hi, capacity, lambda).lp_value;
  };
  std::uint64_t evals = 0;
  double best_lambda = state.lambda;
  double best = eval(best_lambda);
  ++evals;

  // Probe one step up, then down; continue in the improving direction until
  // the bound stops strictly decreasing.
  const double delta = state.delta;
  bool moved = false;
  {
    const double up = best_lambda + delta;
    const double b = eval(up);
    ++evals;
    if (b < best) {
      best = b;
      best_lambda = up;
      moved = true;
      while (evals < kLagrangianIterationCap) {
        const double nl = best_lambda + delta;
        const double nb = eval(nl);
        ++evals;
        if (nb < best) {
          best = nb;
          best_lambda = nl;
        } else {
          break;
        }
      }
    }
  }
  if (!moved && state.lambda > 0) {
    double lam = std::max(0.0, state.lambda - delta);
    double b = eval(lam);
    ++evals;
    if (b < best) {
      best = b;
      best_lambda = lam;
      while (best_lambda > 0 && evals < kLagrangianIterationCap) {
        const double nl = std::max(0.0, best_lambda - delta);
        const double nb = eval(nl);
        ++evals;
        if (nb < best) {
          best = nb;
          best_lambda = nl;
        } else {
          break;
        }
      }
    }
  }
  if (evals >= kLagrangianIterationCap) state.step_capped = true;
  state.iterations += evals;
  state.lambda = best_lambda;
  state.last_bound = best;
  fill(p_hi, capacity, best_lambda);  // leave fill state at the returned multiplier
  return best;
}

double IntervalEvaluator::primal_fill(double p_hi, double capacity, int kappa) {
  last_ = Fill{};
  fill_ids_.clear();
  if (ids_.empty()) return 0;
  compute_keys(p_hi, 0.0);
  ensure_sorted();
  if (capacity <= 0 || kappa <= 0) return 0;
  double used = 0;
  for (int pos : order_) {
    if (last_.integral_count == kappa) break;
    const double k = key_[pos];
    if (k <= 0) break;
    const double v = w_[pos];
    if (used + v > capacity) break;  // stop at the critical product
    used += v;
    last_.integral_mass += v;
    last_.integral_rv += rv_[pos];
    last_.integral_cost += cost_[pos];
    ++last_.integral_count;
    fill_ids_.push_back(ids_[pos]);
  }
  if (last_.integral_count == 0) return 0;
  return last_.integral_rv / (inst_->v0 + last_.integral_mass) - last_.integral_cost;
}

namespace {

IntervalBound dual_only(IntervalEvaluator& ev, double p_lo, double p_hi) {
  IntervalBound b;
  b.p_lo = p_lo;
  b.p_hi = p_hi;
  const auto& f = ev.fill(p_hi, 1.0 / p_lo - 1.0, 0.0);
  b.dual = f.lp_value;
  b.critical_product = f.critical_product;
  b.critical_ratio = f.critical_ratio;
  ev.eligible_order(b.sorted_order);
  return b;
}

}  // namespace

IntervalBound dual_bound(const Instance& inst, double p_lo, double p_hi,
                         std::span<const int> active) {
  check_interval_args(inst, p_lo, p_hi);
  IntervalEvaluator ev(inst, active);
  return dual_only(ev, p_lo, p_hi);
}

IntervalBound primal_bound(const Instance& inst, double p_lo, double p_hi,
                           std::span<const int> active) {
  check_interval_args(inst, p_lo, p_hi);
  IntervalEvaluator ev(inst, active);
  IntervalBound b = dual_only(ev, p_lo, p_hi);
  b.primal = ev.primal_fill(p_hi, 1.0 / p_lo - 1.0, inst.n);
  b.primal_selection.assign(static_cast<std::size_t>(inst.n), 0);
  for (int j : ev.integral_items()) b.primal_selection[j] = 1;
  return b;
}

IntervalBound dual_bound_cardinality(const Instance& inst, double p_lo, double p_hi,
                                     std::span<const int> active, int kappa,
                                     LagrangianState& state) {
  check_interval_args(inst, p_lo, p_hi);
  IntervalEvaluator ev(inst, active);
  IntervalBound b;
  b.p_lo = p_lo;
  b.p_hi = p_hi;
  b.dual = ev.cardinality_scan(p_hi, 1.0 / p_lo - 1.0, kappa, state);
  // The scan leaves the evaluator's fill at the returned multiplier.
  b.critical_product = ev.last_fill().critical_product;
  b.critical_ratio = ev.last_fill().critical_ratio;
  ev.eligible_order(b.sorted_order);
  return b;
}

IntervalBound primal_bound_cardinality(const Instance& inst, double p_lo, double p_hi,
                                       std::span<const int> active, int kappa) {
  check_interval_args(inst, p_lo, p_hi);
  if (kappa < 0) throw std::invalid_argument("kappa must be non-negative");
  IntervalEvaluator ev(inst, active);
  IntervalBound b;
  b.p_lo = p_lo;
  b.p_hi = p_hi;
  b.primal = ev.primal_fill(p_hi, 1.0 / p_lo - 1.0, kappa);
  b.primal_selection.assign(static_cast<std::size_t>(inst.n), 0);
  for (int j : ev.integral_items()) b.primal_selection[j] = 1;
  return b;
}

}  // namespace aopc
