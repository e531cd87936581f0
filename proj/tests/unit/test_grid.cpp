#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "aopc/grid.hpp"
#include "helpers.hpp"

using aopc::GridSpec;

TEST_CASE("interval count for p_min 0.25 at rho 0.001 is exactly 1387") {
  const GridSpec g = aopc::build_grid_for_pmin(0.25, 0.001);
  CHECK(g.K == 1387);
}

TEST_CASE("interval count for p_min 0.25 at rho 1e-7 is exactly 13862945") {
  const GridSpec g = aopc::build_grid_for_pmin(0.25, 1e-7);
  CHECK(g.K == 13862945);
  // Consistent with the closed form ceil(ln(1/p_min) / ln(1+rho)).
  const double expected = std::ceil(std::log(4.0) / std::log1p(1e-7));
  CHECK(static_cast<double>(g.K) == expected);
}

TEST_CASE("grid points start at 1, shrink geometrically, and cover p_min") {
  const GridSpec g = aopc::build_grid_for_pmin(0.37, 0.01);
  CHECK(g.point(1) == 1.0);
  CHECK(g.point(g.K + 1) <= 0.37);
  CHECK(g.point(g.K) > 0.37);
  for (std::uint64_t k = 1; k <= g.K; ++k) {
    const double hi = g.point(k);
    const double lo = g.point(k + 1);
    CHECK(lo < hi);
    CHECK(hi / lo == doctest::Approx(1.01).epsilon(1e-12));
  }
}

TEST_CASE("the walker tracks direct evaluation within re-anchoring drift") {
  const GridSpec g = aopc::build_grid_for_pmin(0.25, 1e-5);
  aopc::GridWalker w(g, 1);
  for (std::uint64_t k = 1; k <= 200000 && k <= g.K; ++k, w.advance()) {
    REQUIRE(w.k() == k);
    // Sample densely around the re-anchor boundary and sparsely elsewhere.
    const bool near_anchor = (k & 0xFFFF) < 4 || (k & 0xFFFF) > 0xFFFC;
    if (near_anchor || k % 997 == 0) {
      // One rounded division per step since the last anchor, so the error
      // budget grows linearly and resets every 2^16 steps.
      const auto since_anchor = static_cast<double>((k - 1) & 0xFFFF);
      const double tol = 1e-15 + 3e-16 * since_anchor;
      CHECK(std::abs(w.hi() - g.point(k)) <= tol * g.point(k));
      CHECK(std::abs(w.lo() - g.point(k + 1)) <= tol * g.point(k + 1));
    }
  }
}

TEST_CASE("a walker can start in the middle of the grid") {
  const GridSpec g = aopc::build_grid_for_pmin(0.25, 1e-4);
  aopc::GridWalker w(g, 5000);
  CHECK(w.k() == 5000);
  CHECK(w.hi() == doctest::Approx(g.point(5000)).epsilon(1e-13));
  w.advance();
  CHECK(w.k() == 5001);
  CHECK(w.lo() == doctest::Approx(g.point(5002)).epsilon(1e-13));
}

TEST_CASE("build_grid uses the instance's smallest no-purchase probability") {
  // Normalized instance with total preference mass 3 has p_min = 1/4.
  const aopc::Instance inst =
      testutil::make_instance(1.0, {10, 10, 10}, {0, 0, 0}, {1.0, 1.0, 1.0});
  const GridSpec g = aopc::build_grid(inst, 0.001);
  CHECK(g.p_min == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(g.K == 1387);
}

TEST_CASE("grid construction validates its arguments") {
  const aopc::Instance raw = testutil::make_instance(2.0, {10}, {0}, {1});
  CHECK_THROWS_AS(aopc::build_grid(raw, 0.001), std::invalid_argument);
  const aopc::Instance norm = testutil::make_instance(1.0, {10}, {0}, {1});
  CHECK_THROWS_AS(aopc::build_grid(norm, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(aopc::build_grid(norm, -0.5), std::invalid_argument);
}

TEST_CASE("smaller rho never coarsens the grid") {
  std::uint64_t last = 0;
  for (double rho : {0.25, 0.01, 0.001, 1e-4, 1e-5}) {
    const std::uint64_t k = aopc::build_grid_for_pmin(0.3, rho).K;
    CHECK(k >= last);
    last = k;
  }
}
