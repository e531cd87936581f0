#include "aopc/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace aopc {

double GridSpec::point(std::uint64_t k) const {
  return std::exp((1.0 - static_cast<double>(k)) * log1p_rho);
}

GridSpec build_grid_for_pmin(double p_min, double rho) {
  if (!(rho > 0)) throw std::invalid_argument("rho must be positive");
  if (!(p_min > 0 && p_min <= 1)) throw std::invalid_argument("p_min must lie in (0, 1]");
  GridSpec g;
  g.rho = rho;
  g.p_min = p_min;
  g.log1p_rho = std::log1p(rho);
  // Smallest K with (1+rho)^-K <= p_min.
  const double target = -std::log(p_min) / g.log1p_rho;
  auto K = static_cast<std::uint64_t>(std::ceil(target));
  if (K < 1) K = 1;
  // The logarithms carry rounding error near integral targets; settle the
  // boundary with the same arithmetic point() uses.
  while (g.point(K + 1) > p_min && K < (std::uint64_t{1} << 62)) ++K;
  while (K > 1 && g.point(K) <= p_min) --K;
  g.K = K;
  return g;
}

GridSpec build_grid(const Instance& inst, double rho) {
  if (!inst.is_normalized()) throw std::invalid_argument("build_grid needs a normalized instance");
  return build_grid_for_pmin(1.0 / (1.0 + inst.preference_sum()), rho);
}

GridWalker::GridWalker(const GridSpec& grid, std::uint64_t k_start) : grid_(&grid), k_(k_start) {
  hi_ = grid_->point(k_);
  lo_ = grid_->point(k_ + 1);
}

void GridWalker::advance() {
  ++k_;
  if (++steps_since_anchor_ >= (1u << 16)) {
    steps_since_anchor_ = 0;
    hi_ = grid_->point(k_);
    lo_ = grid_->point(k_ + 1);
  } else {
    hi_ = lo_;
    lo_ /= (1.0 + grid_->rho);
  }
}

}  // namespace aopc
