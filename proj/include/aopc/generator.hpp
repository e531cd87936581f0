#pragma once

#include <cstdint>
#include <vector>

#include "aopc/instance.hpp"

namespace aopc {

/// Random instance family. For each instance:
///   - raw weights w_j ~ U(0,1] are scaled to v_j = w_j / sum_k w_k, so the
///     preference weights sum to exactly 1 before normalization,
///   - v0 = phi / (1 - phi), which gives the no-purchase option a market
///     share of phi when all products are offered,
///   - r_j ~ U[0, 2000], redrawing any exact zero,
///   - c_j ~ U[0, gamma * r_j * v_j / (v0 + v_j)], so gamma scales costs
///     relative to the revenue the product can contribute on its own.
///
/// Reproducibility: instance i uses a std::mt19937_64 engine seeded with
/// seed + i. Draw order is w_1..w_n, then r_1..r_n (with redraws inline),
/// then c_1..c_n. Uniforms come from the top 53 bits of the raw engine
/// output, so the stream is identical across platforms.
struct GeneratorConfig {
  int n = 100;
  double phi = 0.25;   // no-purchase share, in (0,1)
  double gamma = 0.5;  // cost level, >= 0 (0 produces cost-free instances)
  std::uint64_t seed = 1;
  int count = 1;
};

std::vector<Instance> generate(const GeneratorConfig& cfg);

}  // namespace aopc
