#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "aopc/instance.hpp"

namespace testutil {

inline aopc::Instance make_instance(double v0, std::vector<double> r, std::vector<double> c,
                                    std::vector<double> v) {
  aopc::Instance inst;
  inst.n = static_cast<int>(r.size());
  inst.v0 = v0;
  inst.revenue = std::move(r);
  inst.cost = std::move(c);
  inst.preference = std::move(v);
  return inst;
}

/// Small random instance built directly from an engine, independent of the
/// library's instance generator, so generator and solver tests cannot share a
/// bug. cost_level scales costs against the revenue a product can contribute
/// on its own; 0 gives a cost-free instance.
inline aopc::Instance random_instance(std::mt19937_64& rng, int n, double v0 = 1.0,
                                      double cost_level = 0.7) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  aopc::Instance inst;
  inst.n = n;
  inst.v0 = v0;
  for (int j = 0; j < n; ++j) {
    inst.revenue.push_back(1.0 + 99.0 * u01(rng));
    inst.preference.push_back(0.05 + 0.95 * u01(rng));
  }
  for (int j = 0; j < n; ++j) {
    const double cap =
        cost_level * inst.revenue[j] * inst.preference[j] / (v0 + inst.preference[j]);
    inst.cost.push_back(cap * u01(rng));
  }
  return inst;
}

inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline int count_selected(const std::vector<std::uint8_t>& sel) {
  int c = 0;
  for (std::uint8_t b : sel) c += (b != 0);
  return c;
}

}  // namespace testutil
