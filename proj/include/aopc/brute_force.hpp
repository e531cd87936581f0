#pragma once

#include <optional>

#include "aopc/instance.hpp"
#include "aopc/solve_types.hpp"

namespace aopc {

/// Exhaustive reference solver. Enumerates all selections (optionally capped
/// at `kappa` products) in lexicographic order of the selection vector and
/// keeps the first maximizer, so ties resolve to the lexicographically
/// smallest selection. Guarded to n <= 25. Intended for tests and as a CLI
/// oracle, not for production sizes.
SolveResult brute_force_optimum(const Instance& inst, std::optional<int> kappa = {});

struct WindowBest {
  bool found = false;
  double profit = 0;
  std::vector<std::uint8_t> selection;
};

/// Best profit among selections whose no-purchase probability
/// v0 / (v0 + v(x)) lies in [p_lo - slack, p_hi + slack]. Same enumeration
/// order and guard as brute_force_optimum.
WindowBest brute_force_window(const Instance& inst, double p_lo, double p_hi,
                              std::optional<int> kappa = {}, double slack = 0.0);

}  // namespace aopc
