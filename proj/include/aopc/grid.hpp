#pragma once

#include <cstdint>

#include "aopc/instance.hpp"

namespace aopc {

/// Geometric grid of candidate no-purchase probabilities covering
/// [p_min, 1], where p_min = 1 / (1 + sum_j v_j) is the smallest possible
/// no-purchase probability of the (normalized) instance. Points are
/// point(k) = (1+rho)^(1-k) for k = 1..K+1, so point(1) = 1 and K is the
/// smallest exponent with point(K+1) <= p_min. Interval k spans
/// [point(k+1), point(k)]; adjacent points differ by the factor 1+rho.
struct GridSpec {
  double rho = 0;
  std::uint64_t K = 0;  // number of intervals
  double p_min = 1;
  double log1p_rho = 0;

  double point(std::uint64_t k) const;
};

/// Requires a normalized instance and rho > 0.
GridSpec build_grid(const Instance& inst, double rho);

GridSpec build_grid_for_pmin(double p_min, double rho);

/// Walks intervals k, k+1, ... with one division per step. Division drift
/// compounds, so the walker re-anchors through point() every 2^16 steps,
/// keeping every point within a relative error well below 1e-12.
class GridWalker {
 public:
  GridWalker(const GridSpec& grid, std::uint64_t k_start);

  std::uint64_t k() const { return k_; }
  double hi() const { return hi_; }  // point(k)
  double lo() const { return lo_; }  // point(k+1)

  void advance();

 private:
  const GridSpec* grid_;
  std::uint64_t k_;
  std::uint64_t steps_since_anchor_ = 0;
  double hi_;
  double lo_;
};

}  // namespace aopc
