#include <doctest.h>

#include <sstream>

#include "aopc/generator.hpp"
#include "aopc/instance_io.hpp"

using aopc::GeneratorConfig;

namespace {

std::string to_bytes(const aopc::Instance& inst) {
  std::ostringstream os;
  aopc::write_instance(inst, os);
  return os.str();
}

}  // namespace

TEST_CASE("same configuration generates byte-identical instances") {
  GeneratorConfig cfg;
  cfg.n = 37;
  cfg.phi = 0.25;
  cfg.gamma = 1.0;
  cfg.seed = 42;
  cfg.count = 3;
  const auto a = aopc::generate(cfg);
  const auto b = aopc::generate(cfg);
  REQUIRE(a.size() == 3);
  REQUIRE(b.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(to_bytes(a[i]) == to_bytes(b[i]));
}

TEST_CASE("instance i of a batch equals a single draw seeded with seed + i") {
  GeneratorConfig batch;
  batch.n = 11;
  batch.phi = 0.75;
  batch.gamma = 0.5;
  batch.seed = 5;
  batch.count = 3;
  GeneratorConfig single = batch;
  single.seed = 7;  // = 5 + 2
  single.count = 1;
  const auto all = aopc::generate(batch);
  const auto one = aopc::generate(single);
  REQUIRE(all.size() == 3);
  REQUIRE(one.size() == 1);
  CHECK(to_bytes(all[2]) == to_bytes(one[0]));
}

TEST_CASE("generated values respect the documented ranges") {
  GeneratorConfig cfg;
  cfg.n = 200;
  cfg.phi = 0.25;
  cfg.gamma = 1.0;
  cfg.seed = 9;
  cfg.count = 5;
  for (const aopc::Instance& inst : aopc::generate(cfg)) {
    REQUIRE(inst.n == 200);
    CHECK(inst.v0 == cfg.phi / (1.0 - cfg.phi));
    double sum = 0;
    for (int j = 0; j < inst.n; ++j) {
      CHECK(inst.revenue[j] > 0.0);
      CHECK(inst.revenue[j] <= 2000.0);
      CHECK(inst.preference[j] > 0.0);
      CHECK(inst.cost[j] >= 0.0);
      const double cap =
          cfg.gamma * inst.revenue[j] * inst.preference[j] / (inst.v0 + inst.preference[j]);
      CHECK(inst.cost[j] <= cap);
      sum += inst.preference[j];
    }
    // Weights are scaled to sum to one before any normalization.
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    // With every product offered, the no-purchase share is exactly phi.
    CHECK(inst.v0 / (inst.v0 + sum) == doctest::Approx(cfg.phi).epsilon(1e-12));
    CHECK_NOTHROW(aopc::validate(inst));
  }
}

TEST_CASE("gamma = 0 produces cost-free instances") {
  GeneratorConfig cfg;
  cfg.n = 50;
  cfg.gamma = 0.0;
  cfg.seed = 3;
  const auto out = aopc::generate(cfg);
  REQUIRE(out.size() == 1);
  for (double c : out[0].cost) CHECK(c == 0.0);
}

TEST_CASE("metadata records the per-instance seed and the configuration") {
  GeneratorConfig cfg;
  cfg.n = 8;
  cfg.phi = 0.75;
  cfg.gamma = 1.0;
  cfg.seed = 100;
  cfg.count = 2;
  const auto out = aopc::generate(cfg);
  REQUIRE(out.size() == 2);
  REQUIRE(out[0].meta.has_value());
  REQUIRE(out[1].meta.has_value());
  CHECK(out[0].meta->phi == 0.75);
  CHECK(out[0].meta->gamma == 1.0);
  CHECK(out[0].meta->seed == 100);
  CHECK(out[1].meta->seed == 101);
}

TEST_CASE("different seeds give different instances") {
  GeneratorConfig a;
  a.n = 30;
  a.seed = 1;
  GeneratorConfig b = a;
  b.seed = 2;
  CHECK(to_bytes(aopc::generate(a)[0]) != to_bytes(aopc::generate(b)[0]));
}
