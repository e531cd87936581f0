#include "aopc/generator.hpp"

#include <random>
#include <stdexcept>

namespace aopc {

namespace {

// Uniform double in [0, 1) from the top 53 bits; bit-identical everywhere.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<Instance> generate(const GeneratorConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("generator needs n >= 1");
  if (!(cfg.phi > 0.0 && cfg.phi < 1.0)) throw std::invalid_argument("phi must lie in (0,1)");
  if (!(cfg.gamma >= 0.0)) throw std::invalid_argument("gamma must be non-negative");
  if (cfg.count < 0) throw std::invalid_argument("count must be non-negative");

  std::vector<Instance> out;
  out.reserve(static_cast<std::size_t>(cfg.count));
  for (int i = 0; i < cfg.count; ++i) {
    std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(i));
    Instance inst;
    inst.n = cfg.n;
    inst.v0 = cfg.phi / (1.0 - cfg.phi);
    inst.preference.resize(cfg.n);
    inst.revenue.resize(cfg.n);
    inst.cost.resize(cfg.n);

    double wsum = 0;
    for (int j = 0; j < cfg.n; ++j) {
      const double w = 1.0 - uniform01(rng);  // (0, 1]
      inst.preference[j] = w;
      wsum += w;
    }
    for (int j = 0; j < cfg.n; ++j) inst.preference[j] /= wsum;

    for (int j = 0; j < cfg.n; ++j) {
      double r = 2000.0 * uniform01(rng);
      while (r == 0.0) r = 2000.0 * uniform01(rng);
      inst.revenue[j] = r;
    }
    for (int j = 0; j < cfg.n; ++j) {
      const double hi =
          cfg.gamma * inst.revenue[j] * inst.preference[j] / (inst.v0 + inst.preference[j]);
      inst.cost[j] = hi * uniform01(rng);
    }
    inst.meta = InstanceMeta{cfg.phi, cfg.gamma, cfg.seed + static_cast<std::uint64_t>(i)};
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace aopc
