#include "aopc/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "aopc/fixing.hpp"
#include "aopc/knapsack.hpp"

namespace aopc {
namespace {

using Clock = std::chrono::steady_clock;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kWindowSlack = 1e-12;

// Searching interval-by-interval costs at least one LP per surviving
// interval, so it only beats one search over the whole window when the
// survivor list is short. Instances whose products each carry a large share
// of the preference mass keep millions of intervals alive (their bounds
// barely move within any one interval), and those are exactly the instances
// whose whole-window tree is small; past this cutoff the search falls back
// to the single-window pass.
constexpr std::size_t kMaxRangeSearchRecords = std::size_t{1} << 18;

struct Node {
  std::vector<int> free;   // undecided products, ascending ids
  std::vector<int> taken;  // products fixed into the assortment
  double v_comm = 0.0;     // preference mass of taken
  double rv_comm = 0.0;    // sum of r_j v_j over taken
  double c_comm = 0.0;     // sum of c_j over taken
  double lambda = 0.0;     // warm start for the cardinality multiplier
};

struct NodeEval {
  double bound = -kInf;
  int branch_product = -1;
  double lambda = 0.0;
};

class Search {
 public:
  Search(const Instance& inst, const SolveParams& params,
         const BoundingResult& bnd, Clock::time_point deadline)
      : inst_(inst),
        params_(params),
        deadline_(deadline),
        window_lo_(bnd.window_lo),
        window_hi_(bnd.window_hi),
        spans_(bnd.spans),
        best_(bnd.lb),
        best_selection_(bnd.incumbent),
        ev_(inst, bnd.active_remaining) {
    root_free_ = bnd.active_remaining;
    debug_ = std::getenv("AOPC_TRACE_SEARCH") != nullptr;
  }

  // Solves the window restricted to one probability range [lo, hi], reusing
  // the incumbent across calls. Returns the warm cardinality multiplier so
  // consecutive ranges chain their Lagrangian starts.
  double run_range(double lo, double hi, double lambda_warm) {
    int_lo_ = lo;
    int_hi_ = hi;
    Node root;
    root.free = root_free_;
    root.lambda = lambda_warm;
    NodeEval ev = settle(root);
    const double lambda_out = ev.lambda;
    dfs(root, ev);
    return lambda_out;
  }

  // Searches each surviving grid interval separately, most promising first.
  // A single interval pins the total preference mass to a sliver, so its
  // subtree collapses after a handful of branches; intervals whose recorded
  // dual bound cannot beat the incumbent are skipped outright. When no
  // per-interval records are available the whole window is searched as one
  // range (small instances with dense survivor sets).
  void run(double lambda_warm, const std::vector<IntervalRecord>& records) {
    if (records.empty()) {
      run_range(window_lo_, window_hi_, lambda_warm);
      return;
    }
    std::vector<const IntervalRecord*> order;
    order.reserve(records.size());
    for (const IntervalRecord& r : records) order.push_back(&r);
    std::sort(order.begin(), order.end(),
              [](const IntervalRecord* a, const IntervalRecord* b) {
                if (a->dual != b->dual) return a->dual > b->dual;
                return a->k < b->k;
              });
    double lam = lambda_warm;
    for (const IntervalRecord* rec : order) {
      if (rec->dual <= best_ + params_.tolerance) break;  // sorted: rest too
      if (timed_out_) {
        // Everything not yet searched is covered by this (largest) dual.
        open_ub_ = std::max(open_ub_, rec->dual);
        return;
      }
      lam = run_range(rec->p_lo, rec->p_hi, lam);
    }
  }

  double best() const { return best_; }
  const std::vector<std::uint8_t>& best_selection() const { return best_selection_; }
  long long nodes() const { return nodes_; }
  bool timed_out() const { return timed_out_; }
  bool step_capped() const { return step_capped_; }
  // Largest bound over subtrees abandoned on timeout; -inf when none.
  double open_bound() const { return open_ub_; }

 private:
  bool in_window(double p) const {
    if (p < window_lo_ - kWindowSlack || p > window_hi_ + kWindowSlack) return false;
    if (!params_.restrict_to_union) return true;
    for (const Span& s : spans_) {
      if (p >= s.lo - kWindowSlack && p <= s.hi + kWindowSlack) return true;
      if (p > s.hi) break;  // spans are sorted by descending probability
    }
    return false;
  }

  void offer_incumbent(const Node& nd, std::span<const int> extra, int max_extra) {
    double mass = nd.v_comm;
    double rv = nd.rv_comm;
    double cost = nd.c_comm;
    int used = 0;
    for (int j : extra) {
      if (used >= max_extra) break;
      mass += inst_.preference[j];
      rv += inst_.revenue[j] * inst_.preference[j];
      cost += inst_.cost[j];
      ++used;
    }
    const double p = inst_.v0 / (inst_.v0 + mass);
    if (!in_window(p)) return;
    const double profit = (mass > 0.0 ? rv / (inst_.v0 + mass) - cost : 0.0);
    if (profit <= best_) return;
    best_ = profit;
    best_selection_.assign(inst_.n, 0);
    for (int j : nd.taken) best_selection_[j] = 1;
    used = 0;
    for (int j : extra) {
      if (used >= max_extra) break;
      best_selection_[j] = 1;
      ++used;
    }
  }

  NodeEval evaluate(const Node& nd) {
    ++nodes_;
    if ((nodes_ & 511) == 0 && Clock::now() > deadline_) timed_out_ = true;
    const bool dbg = debug_ && nodes_ <= 400;

    NodeEval out;
    int kappa_rem = std::numeric_limits<int>::max();
    if (params_.kappa) kappa_rem = *params_.kappa - static_cast<int>(nd.taken.size());

    if (nd.free.empty() || kappa_rem <= 0) {
      // Leaf: the assortment is fully decided.
      offer_incumbent(nd, {}, 0);
      const double p = inst_.v0 / (inst_.v0 + nd.v_comm);
      if (p >= int_lo_ - kWindowSlack && p <= int_hi_ + kWindowSlack) {
        out.bound = (nd.v_comm > 0.0 ? nd.rv_comm / (inst_.v0 + nd.v_comm) - nd.c_comm : 0.0);
      }
      return out;
    }

    double v_free = 0.0;
    for (int j : nd.free) v_free += inst_.preference[j];
    const double p_hi = std::min(int_hi_, inst_.v0 / (inst_.v0 + nd.v_comm));
    const double p_lo = std::max(int_lo_, inst_.v0 / (inst_.v0 + nd.v_comm + v_free));
    if (p_lo > p_hi + kWindowSlack) return out;  // node window empty

    const double capacity = inst_.v0 / p_lo - inst_.v0 - nd.v_comm;
    ev_.set_active(nd.free);
    double lp = 0.0;
    if (params_.kappa) {
      LagrangianState st;
      st.lambda = nd.lambda;
      st.delta = params_.delta;
      lp = ev_.cardinality_scan(p_hi, capacity, kappa_rem, st);
      out.lambda = st.lambda;
      step_capped_ = step_capped_ || st.step_capped;
    } else {
      lp = ev_.fill(p_hi, capacity).lp_value;
    }
    out.bound = p_hi * nd.rv_comm - nd.c_comm + lp;

    const auto& f = ev_.last_fill();
    out.branch_product = f.critical_product;
    if (dbg) {
      std::fprintf(stderr,
                   "[node %lld] free=%zu taken=%zu bound=%.12f best=%.12f "
                   "room=%.3e crit=%d ratio=%.6f p=[%.9f,%.9f]\n",
                   nodes_, nd.free.size(), nd.taken.size(), out.bound, best_,
                   out.bound - (best_ + params_.tolerance), f.critical_product,
                   f.critical_ratio, p_lo, p_hi);
    }
    offer_incumbent(nd, ev_.integral_items(), kappa_rem);

    if (out.branch_product < 0 && out.bound > best_ + params_.tolerance) {
      // Integral relaxation that did not close the node: split on the
      // heaviest free product to move the total preference mass decisively.
      int pick = nd.free.front();
      for (int j : nd.free) {
        if (inst_.preference[j] > inst_.preference[pick]) pick = j;
      }
      out.branch_product = pick;
    }
    return out;
  }

  // Forces products whose LP sensitivity penalty alone exceeds the room left
  // above the incumbent: a product packed at ratio key can only leave the
  // solution at a cost of v * (key - ratio), and an unpacked one can only
  // enter at v * (ratio - key), so when that penalty crosses the remaining
  // gap the product's side is decided for the whole subtree. Returns whether
  // the node changed. Call right after evaluate() so the evaluator still
  // holds this node's fill.
  bool reduce(Node& nd, const NodeEval& e) {
    const double room = e.bound - (best_ + params_.tolerance);
    if (!(room > 0)) return false;
    const auto ids = ev_.active();
    const auto keys = ev_.item_keys();
    const auto w = ev_.item_weights();
    const double ratio = ev_.last_fill().critical_ratio;
    std::vector<int> keep;
    keep.reserve(ids.size());
    bool changed = false;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const int j = ids[i];
      const double pen = w[i] * std::abs(keys[i] - ratio);
      if (pen > room) {
        changed = true;
        if (keys[i] > ratio) {
          nd.taken.push_back(j);
          nd.v_comm += inst_.preference[j];
          nd.rv_comm += inst_.revenue[j] * inst_.preference[j];
          nd.c_comm += inst_.cost[j];
        }
        // keys[i] < ratio: dropped entirely.
      } else {
        keep.push_back(j);
      }
    }
    if (debug_ && nodes_ <= 400) {
      std::fprintf(stderr, "  [reduce] room=%.3e kept=%zu of %zu\n", room,
                   keep.size(), ids.size());
    }
    if (changed) nd.free = std::move(keep);
    return changed;
  }

  // Evaluate and then apply reduced-cost fixing until the node stops
  // changing, is pruned, or becomes a leaf. Leaves skip reduce(): their
  // evaluation never ran an LP, so the evaluator holds no fill for them.
  NodeEval settle(Node& nd) {
    for (;;) {
      NodeEval e = evaluate(nd);
      if (timed_out_ || e.bound <= best_ + params_.tolerance) return e;
      if (nd.free.empty()) return e;
      if (params_.kappa &&
          static_cast<int>(nd.taken.size()) >= *params_.kappa) {
        return e;
      }
      if (!reduce(nd, e)) return e;
      nd.lambda = e.lambda;
    }
  }

  Node make_child(const Node& nd, int b, bool include, double lambda) const {
    Node ch;
    ch.free.reserve(nd.free.size() - 1);
    for (int j : nd.free) {
      if (j != b) ch.free.push_back(j);
    }
    ch.taken = nd.taken;
    ch.v_comm = nd.v_comm;
    ch.rv_comm = nd.rv_comm;
    ch.c_comm = nd.c_comm;
    ch.lambda = lambda;
    if (include) {
      ch.taken.push_back(b);
      ch.v_comm += inst_.preference[b];
      ch.rv_comm += inst_.revenue[b] * inst_.preference[b];
      ch.c_comm += inst_.cost[b];
    }
    return ch;
  }

  void dfs(const Node& nd, const NodeEval& ev) {
    if (ev.bound <= best_ + params_.tolerance) return;
    if (timed_out_) {
      open_ub_ = std::max(open_ub_, ev.bound);
      return;
    }
    if (ev.branch_product < 0) return;

    Node inc = make_child(nd, ev.branch_product, true, ev.lambda);
    Node exc = make_child(nd, ev.branch_product, false, ev.lambda);
    NodeEval einc = settle(inc);
    NodeEval eexc = settle(exc);
    if (timed_out_) {
      // The parent bound covers both half-explored children.
      open_ub_ = std::max(open_ub_, ev.bound);
      return;
    }
    if (eexc.bound > einc.bound) {
      dfs(exc, eexc);
      dfs(inc, einc);
    } else {
      dfs(inc, einc);
      dfs(exc, eexc);
    }
  }

  const Instance& inst_;
  const SolveParams& params_;
  Clock::time_point deadline_;
  double window_lo_;
  double window_hi_;
  double int_lo_ = 0.0;  // probability range of the current search pass
  double int_hi_ = 1.0;
  std::vector<Span> spans_;
  double best_;
  std::vector<std::uint8_t> best_selection_;
  IntervalEvaluator ev_;
  std::vector<int> root_free_;
  long long nodes_ = 0;
  bool timed_out_ = false;
  bool step_capped_ = false;
  bool debug_ = false;
  double open_ub_ = -kInf;
};

}  // namespace

SolveResult solve(const Instance& inst, const SolveParams& params) {
  validate(inst);
  if (params.kappa && *params.kappa < 0) {
    throw std::invalid_argument("kappa must be nonnegative");
  }
  if (!(params.time_limit_seconds > 0.0)) {
    throw std::invalid_argument("time limit must be positive");
  }
  if (!(params.rho_first >= params.rho_last && params.rho_last > 0.0)) {
    throw std::invalid_argument("need rho_first >= rho_last > 0");
  }
  if (!(params.tolerance > 0.0)) {
    throw std::invalid_argument("tolerance must be positive");
  }
  if (!(params.delta > 0.0)) {
    throw std::invalid_argument("multiplier step must be positive");
  }

  const auto t0 = Clock::now();
  SolveResult out;
  out.best_selection.assign(inst.n, 0);

  if (params.kappa && *params.kappa == 0) {
    // Only the empty assortment is feasible.
    out.status = SolveStatus::kOptimal;
    out.best_profit = 0.0;
    out.proven_ub = 0.0;
    out.wall_time_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return out;
  }

  const Instance norm = normalize(inst);
  const auto deadline =
      t0 + std::chrono::duration_cast<Clock::duration>(
               std::chrono::duration<double>(params.time_limit_seconds));

  BoundingOptions bopts;
  bopts.kappa = params.kappa;
  bopts.delta = params.delta;
  bopts.deadline = deadline;
  FixingReport fixing;
  if (params.enable_fixing) {
    bopts.fixing_hook = [&](const BoundingResult& br,
                            std::span<const int> active) -> std::vector<int> {
      std::vector<int> fixed = fix_rule1(norm, br.window_hi, active);
      fixing.by_rule1 += fixed.size();
      if (!params.kappa) {
        // Reduced-cost fixing needs every surviving interval's critical
        // ratio; it is not applied under a cardinality constraint.
        std::vector<int> still;
        still.reserve(active.size());
        std::set_difference(active.begin(), active.end(), fixed.begin(),
                            fixed.end(), std::back_inserter(still));
        std::vector<int> more = fix_rule2(norm, br.records, br.lb, still);
        fixing.by_rule2 += more.size();
        std::vector<int> merged;
        merged.reserve(fixed.size() + more.size());
        std::merge(fixed.begin(), fixed.end(), more.begin(), more.end(),
                   std::back_inserter(merged));
        fixed = std::move(merged);
      }
      for (int j : fixed) {
        if (j >= 0 && j < norm.n && br.incumbent.size() == static_cast<size_t>(norm.n) &&
            br.incumbent[j]) {
          throw std::logic_error("fixing removed a product of the incumbent assortment");
        }
        fixing.fixed_out.push_back(j);
      }
      return fixed;
    };
  }

  BoundingResult bres = sequential_bound(norm, params.rho_first, params.rho_last, bopts);
  out.bounding = bres.summary();
  out.fixing = fixing;
  out.fixing.active_remaining = bres.active_remaining.size();
  out.best_selection = bres.incumbent;
  out.best_profit = expected_profit(inst, out.best_selection);

  if (bres.timed_out) {
    out.status = SolveStatus::kTimeLimit;
    out.proven_ub = bres.ub;
    out.wall_time_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return out;
  }

  const double closed = params.tolerance * std::max(1.0, std::abs(bres.lb));
  if (bres.ub - bres.lb <= closed) {
    out.status = SolveStatus::kOptimal;
    out.proven_ub = bres.ub;
    out.wall_time_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return out;
  }

  Search search(norm, params, bres, deadline);
  static const std::vector<IntervalRecord> kNoRecords;
  const bool per_range = !bres.records_overflowed && !bres.records.empty() &&
                         bres.records.size() <= kMaxRangeSearchRecords;
  search.run(bres.lambda_warm, per_range ? bres.records : kNoRecords);
  out.nodes_explored = search.nodes();
  out.bounding.lagrangian_step_capped =
      out.bounding.lagrangian_step_capped || search.step_capped();
  out.best_selection = search.best_selection();
  out.best_profit = expected_profit(inst, out.best_selection);

  if (search.timed_out()) {
    out.status = SolveStatus::kTimeLimit;
    double open = std::max(search.open_bound(), search.best() + params.tolerance);
    out.proven_ub = std::min(bres.ub, open);
  } else {
    out.status = SolveStatus::kOptimal;
    out.proven_ub = std::min(bres.ub, search.best() + params.tolerance);
  }
  out.wall_time_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return out;
}

}  // namespace aopc
