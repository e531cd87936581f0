#include "aopc/brute_force.hpp"

#include <stdexcept>

namespace aopc {

namespace {

struct Enumerator {
  const Instance& inst;
  int kappa;
  bool use_window = false;
  double p_lo = 0, p_hi = 1;

  std::vector<std::uint8_t> cur;
  std::vector<std::uint8_t> best_sel;
  double best = 0;
  bool found = false;
  std::uint64_t leaves = 0;

  explicit Enumerator(const Instance& i, std::optional<int> k)
      : inst(i), kappa(k.value_or(i.n)), cur(static_cast<std::size_t>(i.n), 0) {}

  void leaf(double rv, double mass, double cost, bool any) {
    ++leaves;
    const double p = any ? inst.v0 / (inst.v0 + mass) : 1.0;
    if (use_window && (p < p_lo || p > p_hi)) return;
    const double profit = any ? rv / (inst.v0 + mass) - cost : 0.0;
    if (!found || profit > best) {
      found = true;
      best = profit;
      best_sel = cur;
    }
  }

  // Excluding before including visits selections in lexicographic order of
  // the 0/1 vector, so the first maximizer seen is the smallest one.
  void walk(int j, int count, double rv, double mass, double cost) {
    if (j == inst.n) {
      leaf(rv, mass, cost, count > 0);
      return;
    }
    walk(j + 1, count, rv, mass, cost);
    if (count < kappa) {
      cur[j] = 1;
      walk(j + 1, count + 1, rv + inst.revenue[j] * inst.preference[j], mass + inst.preference[j],
           cost + inst.cost[j]);
      cur[j] = 0;
    }
  }
};

void check_size(const Instance& inst) {
  validate(inst);
  if (inst.n > 25) throw std::invalid_argument("brute force is limited to n <= 25");
}

}  // namespace

SolveResult brute_force_optimum(const Instance& inst, std::optional<int> kappa) {
  check_size(inst);
  if (kappa && *kappa < 0) throw std::invalid_argument("kappa must be non-negative");
  Enumerator e(inst, kappa);
  e.walk(0, 0, 0, 0, 0);
  SolveResult res;
  res.status = SolveStatus::kOptimal;
  res.best_selection = std::move(e.best_sel);
  res.best_profit = e.best;
  res.proven_ub = e.best;
  res.nodes_explored = e.leaves;
  return res;
}

WindowBest brute_force_window(const Instance& inst, double p_lo, double p_hi,
                              std::optional<int> kappa, double slack) {
  check_size(inst);
  if (kappa && *kappa < 0) throw std::invalid_argument("kappa must be non-negative");
  Enumerator e(inst, kappa);
  e.use_window = true;
  e.p_lo = p_lo - slack;
  e.p_hi = p_hi + slack;
  e.walk(0, 0, 0, 0, 0);
  WindowBest wb;
  wb.found = e.found;
  wb.profit = e.found ? e.best : 0.0;
  wb.selection = std::move(e.best_sel);
  return wb;
}

}  // namespace aopc
