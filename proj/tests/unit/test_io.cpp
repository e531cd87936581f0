#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "aopc/generator.hpp"
#include "aopc/instance_io.hpp"
#include "helpers.hpp"

using aopc::Instance;

namespace {

std::string to_bytes(const Instance& inst) {
  std::ostringstream os;
  aopc::write_instance(inst, os);
  return os.str();
}

Instance from_bytes(const std::string& s) {
  std::istringstream is(s);
  return aopc::read_instance(is);
}

}  // namespace

TEST_CASE("writing the same instance twice produces identical bytes") {
  aopc::GeneratorConfig cfg;
  cfg.n = 64;
  cfg.seed = 11;
  const Instance inst = aopc::generate(cfg)[0];
  CHECK(to_bytes(inst) == to_bytes(inst));
}

TEST_CASE("write/read round-trip preserves every field bit-exactly") {
  aopc::GeneratorConfig cfg;
  cfg.n = 33;
  cfg.phi = 0.75;
  cfg.gamma = 0.5;
  cfg.seed = 77;
  const Instance inst = aopc::generate(cfg)[0];
  const std::string bytes = to_bytes(inst);
  const Instance back = from_bytes(bytes);
  REQUIRE(back.n == inst.n);
  CHECK(back.v0 == inst.v0);
  for (int j = 0; j < inst.n; ++j) {
    CHECK(back.revenue[j] == inst.revenue[j]);
    CHECK(back.cost[j] == inst.cost[j]);
    CHECK(back.preference[j] == inst.preference[j]);
  }
  REQUIRE(back.meta.has_value());
  CHECK(back.meta->phi == inst.meta->phi);
  CHECK(back.meta->gamma == inst.meta->gamma);
  CHECK(back.meta->seed == inst.meta->seed);
  // A second trip through text is byte-stable.
  CHECK(to_bytes(back) == bytes);
}

TEST_CASE("metadata is optional and its absence round-trips") {
  const Instance inst =
      testutil::make_instance(2.0, {10, 20}, {0.5, 0}, {0.125, 0.25});
  const std::string bytes = to_bytes(inst);
  const Instance back = from_bytes(bytes);
  CHECK_FALSE(back.meta.has_value());
  CHECK(to_bytes(back) == bytes);
}

TEST_CASE("malformed documents are rejected") {
  // Not JSON at all.
  CHECK_THROWS(from_bytes("not json"));
  // Missing required field.
  CHECK_THROWS(from_bytes(R"({"n": 1, "v0": 1.0, "r": [10], "c": [0]})"));
  // Array length disagrees with n.
  CHECK_THROWS(from_bytes(R"({"n": 2, "v0": 1.0, "r": [10], "c": [0], "v": [1]})"));
  // Constraint violations surface through validation.
  CHECK_THROWS(from_bytes(R"({"n": 1, "v0": 1.0, "r": [-10], "c": [0], "v": [1]})"));
  CHECK_THROWS(from_bytes(R"({"n": 1, "v0": 1.0, "r": [10], "c": [-1], "v": [1]})"));
  CHECK_THROWS(from_bytes(R"({"n": 1, "v0": 1.0, "r": [10], "c": [0], "v": [0]})"));
  // Empty stream.
  CHECK_THROWS(from_bytes(""));
}

TEST_CASE("format_double survives a strtod round-trip") {
  const double values[] = {1.0 / 3.0,
                           0.1,
                           487.44736035250799,
                           1e-300,
                           2000.0,
                           6.103515625e-05,
                           0.53291860980456962};
  for (double x : values) {
    const std::string s = aopc::format_double(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
}

TEST_CASE("file round-trip matches the stream round-trip") {
  aopc::GeneratorConfig cfg;
  cfg.n = 17;
  cfg.seed = 123;
  const Instance inst = aopc::generate(cfg)[0];
  const std::string path = "/tmp/aopc_io_test_instance.json";
  aopc::write_instance_file(inst, path);
  const Instance back = aopc::read_instance_file(path);
  CHECK(to_bytes(back) == to_bytes(inst));
  std::remove(path.c_str());
}

TEST_CASE("reading a missing file fails loudly") {
  CHECK_THROWS(aopc::read_instance_file("/tmp/aopc_io_test_does_not_exist.json"));
}
