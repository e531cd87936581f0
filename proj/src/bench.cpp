#include "aopc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "aopc/generator.hpp"
#include "aopc/grid.hpp"

namespace aopc {
namespace {

std::string fmt(double x, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, x);
  return buf;
}

}  // namespace

BenchOutcome bench_one(const Instance& inst, const SolveParams& params) {
  BenchOutcome o;
  SolveResult res = solve(inst, params);
  o.status = res.status;
  o.wall = res.wall_time_seconds;
  o.profit = res.best_profit;
  o.proven_ub = res.proven_ub;
  o.bound_lb = res.bounding.lb;
  o.bound_ub = res.bounding.ub;
  o.gap_pct = 100.0 * (res.proven_ub - res.best_profit) /
              std::max(res.proven_ub, 1e-12);
  const double ref = std::max(res.best_profit, 1e-12);
  o.gap_dual_pct = 100.0 * (res.bounding.ub - res.best_profit) / ref;
  o.gap_primal_pct = 100.0 * (res.best_profit - res.bounding.lb) / ref;
  o.primal_optimal = std::abs(res.best_profit - res.bounding.lb) <=
                     1e-9 * std::max(1.0, std::abs(res.best_profit));
  o.fixed_out = static_cast<int>(res.fixing.fixed_out.size());
  o.intervals = res.bounding.intervals_evaluated;
  o.nodes = res.nodes_explored;
  const Instance norm = normalize(inst);
  const double p_min = 1.0 / (1.0 + norm.preference_sum());
  o.grid_k = build_grid_for_pmin(p_min, params.rho_last).K;
  return o;
}

BenchRow run_bench(const BenchConfig& cfg, const SolveParams& base, int jobs) {
  GeneratorConfig gen;
  gen.n = cfg.n;
  gen.phi = cfg.phi;
  gen.gamma = cfg.gamma;
  gen.seed = cfg.seed;
  gen.count = cfg.count;
  const std::vector<Instance> instances = generate(gen);

  BenchRow row;
  row.cfg = cfg;
  SolveParams params = base;
  if (cfg.kappa_half) {
    row.kappa_resolved = (cfg.n + 1) / 2;
    params.kappa = row.kappa_resolved;
  } else if (cfg.kappa) {
    row.kappa_resolved = *cfg.kappa;
    params.kappa = cfg.kappa;
  }

  row.outcomes.resize(instances.size());
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(instances.size())));
  if (workers <= 1) {
    for (size_t i = 0; i < instances.size(); ++i) {
      row.outcomes[i] = bench_one(instances[i], params);
    }
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < instances.size();
             i = next.fetch_add(1)) {
          row.outcomes[i] = bench_one(instances[i], params);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  const double m = static_cast<double>(std::max<size_t>(1, row.outcomes.size()));
  for (const BenchOutcome& o : row.outcomes) {
    if (o.status == SolveStatus::kOptimal) ++row.opt;
    row.gap_avg += o.gap_pct / m;
    row.cpu_avg += o.wall / m;
    row.cpu_max = std::max(row.cpu_max, o.wall);
    row.gap_dual_avg += o.gap_dual_pct / m;
    row.gap_primal_avg += o.gap_primal_pct / m;
    if (o.primal_optimal) ++row.opt_primal;
    row.fixed_avg += o.fixed_out / m;
    row.intervals_avg += static_cast<double>(o.intervals) / m;
    row.intervals_pct +=
        100.0 * static_cast<double>(o.intervals) /
        std::max<double>(1.0, static_cast<double>(o.grid_k)) / m;
  }
  row.fixed_pct = 100.0 * row.fixed_avg / std::max(1, cfg.n);
  return row;
}

std::string bench_csv_header() {
  return "n,phi,gamma,kappa,count,opt,gap,cpu_avg,cpu_max,gap_dual,gap_prim,"
         "opt_prim,#out,%out,#int,%int";
}

std::string bench_csv_row(const BenchRow& r) {
  std::ostringstream os;
  os << r.cfg.n << ',' << fmt(r.cfg.phi) << ',' << fmt(r.cfg.gamma) << ',';
  if (r.kappa_resolved >= 0) os << r.kappa_resolved;
  os << ',' << r.cfg.count << ',' << r.opt << ',' << fmt(r.gap_avg) << ','
     << fmt(r.cpu_avg, "%.3f") << ',' << fmt(r.cpu_max, "%.3f") << ','
     << fmt(r.gap_dual_avg) << ',' << fmt(r.gap_primal_avg) << ','
     << r.opt_primal << ',' << fmt(r.fixed_avg, "%.1f") << ','
     << fmt(r.fixed_pct, "%.1f") << ',' << fmt(r.intervals_avg, "%.0f") << ','
     << fmt(r.intervals_pct, "%.4f");
  return os.str();
}

std::string bench_markdown(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "| n | phi | gamma | kappa | count | opt | gap % | cpu avg s | cpu max s "
        "| dual gap % | primal gap % | primal opt | fixed | fixed % | intervals "
        "| intervals % |\n";
  os << "|---|-----|-------|-------|-------|-----|-------|-----------|-----------"
        "|------------|--------------|------------|-------|---------|-----------"
        "|-------------|\n";
  for (const BenchRow& r : rows) {
    os << "| " << r.cfg.n << " | " << fmt(r.cfg.phi) << " | " << fmt(r.cfg.gamma)
       << " | " << (r.kappa_resolved >= 0 ? std::to_string(r.kappa_resolved) : "-")
       << " | " << r.cfg.count << " | " << r.opt << " | " << fmt(r.gap_avg)
       << " | " << fmt(r.cpu_avg, "%.3f") << " | " << fmt(r.cpu_max, "%.3f")
       << " | " << fmt(r.gap_dual_avg) << " | " << fmt(r.gap_primal_avg)
       << " | " << r.opt_primal << " | " << fmt(r.fixed_avg, "%.1f") << " | "
       << fmt(r.fixed_pct, "%.1f") << " | " << fmt(r.intervals_avg, "%.0f")
       << " | " << fmt(r.intervals_pct, "%.4f") << " |\n";
  }
  return os.str();
}

}  // namespace aopc
