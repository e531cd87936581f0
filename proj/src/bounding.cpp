#include "aopc/bounding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aopc {

BoundingSummary BoundingResult::summary() const {
  BoundingSummary s;
  s.lb = lb;
  s.ub = ub;
  s.window_lo = window_lo;
  s.window_hi = window_hi;
  s.intervals_evaluated = intervals_evaluated;
  s.rho_final = rho_final;
  s.stages = stages;
  s.lagrangian_step_capped = lagrangian_step_capped;
  return s;
}

namespace {

constexpr double kSurviveTol = 1e-9;   // base slack when comparing duals to lb
constexpr double kSpanSlack = 1e-12;   // endpoint slack for closed-interval overlap

struct KRange {
  std::uint64_t begin = 0, end = 0;  // inclusive
};

bool interval_overlaps(const GridSpec& g, std::uint64_t k, const Span& s) {
  return g.point(k + 1) <= s.hi + kSpanSlack && g.point(k) >= s.lo - kSpanSlack;
}

// Fine intervals intersecting the surviving spans of the previous stage.
// Log-based first guesses are padded and then settled with the exact
// overlap predicate, so float error in the logarithms cannot drop intervals.
std::vector<KRange> ranges_for_spans(const GridSpec& g, const std::vector<Span>& spans) {
  std::vector<KRange> out;
  for (const Span& s : spans) {
    const double lo = std::max(s.lo - kSpanSlack, std::numeric_limits<double>::min());
    const double hi = s.hi + kSpanSlack;
    double kb_f = std::floor(-std::log(hi) / g.log1p_rho) - 2.0;
    double ke_f = std::ceil(1.0 - std::log(lo) / g.log1p_rho) + 2.0;
    std::uint64_t kb = kb_f < 1.0 ? 1 : static_cast<std::uint64_t>(kb_f);
    std::uint64_t ke = ke_f < 1.0 ? 1 : static_cast<std::uint64_t>(ke_f);
    kb = std::min(kb, g.K);
    ke = std::min(ke, g.K);
    while (kb <= ke && !interval_overlaps(g, kb, s)) ++kb;
    while (ke >= kb && !interval_overlaps(g, ke, s)) {
      if (ke == kb) { kb = ke + 1; break; }
      --ke;
    }
    if (kb > ke) continue;
    if (!out.empty() && kb <= out.back().end + 1)
      out.back().end = std::max(out.back().end, ke);
    else
      out.push_back({kb, ke});
  }
  return out;
}

struct Run {
  const Instance& inst;
  const BoundingOptions& opts;
  double p_min;
  std::vector<int> active;
  IntervalEvaluator ev;
  BoundingResult res;
  double r_active = 0;     // sum of r_j * v_j over active products
  double lambda_warm = 0;  // cardinality multiplier near the window's top

  Run(const Instance& instance, double pmin, const BoundingOptions& options)
      : inst(instance), opts(options), p_min(pmin), active(make_all_active(instance)),
        ev(instance, active) {
    res.incumbent.assign(static_cast<std::size_t>(inst.n), 0);
    recompute_r_active();
  }

  static std::vector<int> make_all_active(const Instance& instance) {
    std::vector<int> a(static_cast<std::size_t>(instance.n));
    for (int j = 0; j < instance.n; ++j) a[j] = j;
    return a;
  }

  void recompute_r_active() {
    r_active = 0;
    for (int j : active) r_active += inst.revenue[j] * inst.preference[j];
  }

  bool deadline_hit() const {
    return opts.deadline && std::chrono::steady_clock::now() > *opts.deadline;
  }

  void take_incumbent(double value) {
    res.lb = value;
    std::fill(res.incumbent.begin(), res.incumbent.end(), 0);
    for (int j : ev.integral_items()) res.incumbent[j] = 1;
  }

  // Returns false when the deadline fired mid-stage; res keeps the previous
  // completed stage's certificates in that case, but lb/incumbent advances.
  bool run_stage(double rho, bool first_stage, const std::vector<Span>& prev_spans,
                 double rho_next) {
    const GridSpec grid = build_grid_for_pmin(p_min, rho);
    std::vector<KRange> ranges;
    if (first_stage)
      ranges.push_back({1, grid.K});
    else
      ranges = ranges_for_spans(grid, prev_spans);

    // Intervals survive when dual >= lb - margin. The rho_next * r_active
    // part covers the next stage's intervals that straddle a point of this
    // grid: such an interval's dual exceeds its containing coarse duals by at
    // most rho_next * sum(r_j v_j), so pruning only below the margin keeps
    // the restricted fine sweep exact.
    const double margin = kSurviveTol + (rho_next > 0 ? rho_next * r_active : 0.0);

    std::vector<IntervalRecord> cands;
    // Spans are also built while sweeping, against the running lb. They can
    // only be wider than ones derived from the final records, which keeps the
    // next stage sound, and they stay available even when the record buffer
    // overflows.
    std::vector<Span> streamed;
    std::uint64_t survivors = 0;
    std::uint64_t prev_surv_k = 0;
    bool overflowed = false;
    double stage_ub = -std::numeric_limits<double>::infinity();
    LagrangianState lag;
    lag.delta = opts.delta;
    // Warm-start from the multiplier found near the top of the previous
    // stage's window; starting each stage at zero would make the first
    // intervals of every stage pay the full ramp again and leave them with
    // needlessly loose bounds.
    lag.lambda = lambda_warm;
    bool stage_head = true;
    const bool has_kappa = opts.kappa.has_value();
    const int primal_cap = has_kappa ? *opts.kappa : inst.n;
    std::uint64_t evaluated = 0;

    for (const KRange& range : ranges) {
      GridWalker w(grid, range.begin);
      for (std::uint64_t k = range.begin; k <= range.end; ++k, w.advance()) {
        const double p_lo = w.lo();
        const double p_hi = w.hi();
        const double capacity = 1.0 / p_lo - 1.0;

        double dual;
        if (has_kappa) {
          dual = ev.cardinality_scan(p_hi, capacity, *opts.kappa, lag);
          if (stage_head) {
            lambda_warm = lag.lambda;
            stage_head = false;
          }
        } else {
          dual = ev.fill(p_hi, capacity, 0.0).lp_value;
        }
        const int crit_product = ev.last_fill().critical_product;
        const double crit_ratio = ev.last_fill().critical_ratio;
        stage_ub = std::max(stage_ub, dual);

        if (has_kappa) {
          // The multiplier scan's final fill is an integral selection shaped
          // by the cardinality penalty; when it happens to satisfy the limit
          // it is usually a far better feasible point than the plain greedy
          // fill, and its true profit falls out of the fill's running sums.
          const IntervalEvaluator::Fill& lf = ev.last_fill();
          if (lf.integral_count > 0 && lf.integral_count <= *opts.kappa) {
            const double cand =
                lf.integral_rv / (inst.v0 + lf.integral_mass) - lf.integral_cost;
            if (cand > res.lb) take_incumbent(cand);
          }
        }
        const double primal = ev.primal_fill(p_hi, capacity, primal_cap);
        if (primal > res.lb) take_incumbent(primal);

        if (dual >= res.lb - margin) {
          if (survivors > 0 && k == prev_surv_k + 1)
            streamed.back().lo = p_lo;
          else
            streamed.push_back({p_lo, p_hi});
          prev_surv_k = k;
          ++survivors;
          if (!overflowed) {
            cands.push_back({k, p_lo, p_hi, dual, crit_ratio, crit_product});
            if (cands.size() >= opts.record_soft_cap) {
              const double cut = res.lb - margin;
              std::erase_if(cands,
                            [cut](const IntervalRecord& r) { return r.dual < cut; });
              if (cands.size() >= opts.record_soft_cap - opts.record_soft_cap / 8) {
                // Compaction went nowhere; stop keeping per-interval records
                // rather than rescanning the buffer on every push.
                overflowed = true;
                cands.clear();
                cands.shrink_to_fit();
              }
            }
          }
        }

        ++evaluated;
        if ((evaluated & 2047) == 0 && deadline_hit()) {
          res.intervals_evaluated += evaluated;
          res.timed_out = true;
          return false;
        }
      }
    }
    res.intervals_evaluated += evaluated;
    if (evaluated == 0) throw std::logic_error("bounding stage evaluated no intervals");
    if (survivors == 0) throw std::logic_error("no interval survived bounding");

    if (overflowed) {
      res.spans = std::move(streamed);
    } else {
      // Re-trim with the final lb (it can only have risen during the sweep)
      // and rebuild the spans from what is left.
      const double cut = res.lb - margin;
      std::erase_if(cands, [cut](const IntervalRecord& r) { return r.dual < cut; });
      if (cands.empty()) throw std::logic_error("no interval survived bounding");
      survivors = cands.size();
      std::vector<Span> spans;
      for (std::size_t i = 0; i < cands.size(); ++i) {
        if (!spans.empty() && i > 0 && cands[i].k == cands[i - 1].k + 1)
          spans.back().lo = cands[i].p_lo;
        else
          spans.push_back({cands[i].p_lo, cands[i].p_hi});
      }
      res.spans = std::move(spans);
    }

    res.records = std::move(cands);
    res.records_overflowed = overflowed;
    res.window_hi = res.spans.front().hi;
    res.window_lo = res.spans.back().lo;
    res.ub = stage_ub;
    res.rho_final = rho;
    res.lambda_warm = lambda_warm;
    res.lagrangian_step_capped = res.lagrangian_step_capped || lag.step_capped;

    StageSummary ss;
    ss.rho = rho;
    ss.grid_size = grid.K;
    ss.lb = res.lb;
    ss.ub = stage_ub;
    ss.evaluated = evaluated;
    ss.surviving = survivors;

    if (opts.fixing_hook) {
      std::vector<int> fixed = opts.fixing_hook(res, active);
      if (!fixed.empty()) {
        std::sort(fixed.begin(), fixed.end());
        std::vector<int> next;
        next.reserve(active.size());
        std::set_difference(active.begin(), active.end(), fixed.begin(), fixed.end(),
                            std::back_inserter(next));
        ss.fixed = static_cast<int>(active.size() - next.size());
        active = std::move(next);
        ev.set_active(active);
        recompute_r_active();
      }
    }
    res.stages.push_back(ss);
    return true;
  }

  void run(const std::vector<double>& rhos) {
    std::vector<Span> prev;
    for (std::size_t s = 0; s < rhos.size(); ++s) {
      const double rho_next = s + 1 < rhos.size() ? rhos[s + 1] : 0.0;
      if (!run_stage(rhos[s], s == 0, prev, rho_next)) break;
      if (res.ub - res.lb <= opts.gap_tolerance * std::max(1.0, std::abs(res.lb)))
        break;  // the bounds alone already prove optimality
      prev = res.spans;
    }
    res.active_remaining = active;
  }
};

std::vector<double> stage_rhos(double rho_first, double rho_last) {
  if (!(rho_last > 0) || !(rho_first >= rho_last))
    throw std::invalid_argument("need rho_first >= rho_last > 0");
  std::vector<double> rhos{rho_first};
  while (rhos.back() > rho_last * (1.0 + 1e-12)) {
    double next = rhos.back() / 10.0;
    if (next <= rho_last * (1.0 + 1e-12)) next = rho_last;
    rhos.push_back(next);
  }
  return rhos;
}

}  // namespace

BoundingResult full_grid_bound(const Instance& inst, const GridSpec& grid,
                               const BoundingOptions& opts) {
  if (!inst.is_normalized())
    throw std::invalid_argument("full_grid_bound needs a normalized instance");
  const double p_min = 1.0 / (1.0 + inst.preference_sum());
  if (std::abs(p_min - grid.p_min) > 1e-9 * p_min)
    throw std::invalid_argument("grid was built for a different instance");
  Run run(inst, grid.p_min, opts);
  run.run({grid.rho});
  return std::move(run.res);
}

BoundingResult sequential_bound(const Instance& inst, double rho_first, double rho_last,
                                const BoundingOptions& opts) {
  if (!inst.is_normalized())
    throw std::invalid_argument("sequential_bound needs a normalized instance");
  validate(inst);
  Run run(inst, 1.0 / (1.0 + inst.preference_sum()), opts);
  run.run(stage_rhos(rho_first, rho_last));
  return std::move(run.res);
}

}  // namespace aopc
