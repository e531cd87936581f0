#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aopc/instance.hpp"
#include "aopc/solver.hpp"

namespace aopc {

struct BenchConfig {
  int n = 100;
  double phi = 0.25;
  double gamma = 0.5;
  std::optional<int> kappa;  // ignored when kappa_half is set
  bool kappa_half = false;   // kappa = ceil(n/2)
  int count = 10;
  std::uint64_t seed = 1;
};

struct BenchOutcome {
  SolveStatus status = SolveStatus::kOptimal;
  double wall = 0;
  double profit = 0;
  double proven_ub = 0;
  double bound_lb = 0;  // incumbent after bounding, before search
  double bound_ub = 0;
  double gap_pct = 0;         // final 100 (ub - lb) / max(ub, 1e-12)
  double gap_dual_pct = 0;    // bounding ub vs final profit
  double gap_primal_pct = 0;  // final profit vs bounding incumbent
  bool primal_optimal = false;
  int fixed_out = 0;
  std::uint64_t intervals = 0;
  std::uint64_t grid_k = 0;  // grid size at the finest resolution
  std::uint64_t nodes = 0;
};

struct BenchRow {
  BenchConfig cfg;
  int kappa_resolved = -1;  // -1 when unconstrained
  std::vector<BenchOutcome> outcomes;
  int opt = 0;            // instances solved to proven optimality
  double gap_avg = 0;     // mean final gap (percent)
  double cpu_avg = 0;
  double cpu_max = 0;
  double gap_dual_avg = 0;
  double gap_primal_avg = 0;
  int opt_primal = 0;      // instances whose bounding incumbent was optimal
  double fixed_avg = 0;    // products removed by fixing, mean
  double fixed_pct = 0;    // ... as a percentage of n
  double intervals_avg = 0;
  double intervals_pct = 0;  // evaluated intervals vs the finest grid size
};

/// Solves one instance and collects the measurements used by the benchmark
/// table. grid_k is the size of the finest grid for this instance.
BenchOutcome bench_one(const Instance& inst, const SolveParams& params);

/// Generates cfg.count instances and solves them, optionally on several
/// threads. Results are merged in instance order, so the row is deterministic
/// regardless of jobs.
BenchRow run_bench(const BenchConfig& cfg, const SolveParams& base, int jobs = 1);

std::string bench_csv_header();
std::string bench_csv_row(const BenchRow& row);
std::string bench_markdown(const std::vector<BenchRow>& rows);

}  // namespace aopc
