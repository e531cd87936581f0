#include "aopc/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace aopc {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write_array(std::ostream& os, const std::vector<double>& a) {
  os << '[';
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (j) os << ", ";
    os << format_double(a[j]);
  }
  os << ']';
}

}  // namespace

void write_instance(const Instance& inst, std::ostream& os) {
  validate(inst);
  os << "{\n";
  os << "  \"n\": " << inst.n << ",\n";
  os << "  \"v0\": " << format_double(inst.v0) << ",\n";
  os << "  \"r\": ";
  write_array(os, inst.revenue);
  os << ",\n  \"c\": ";
  write_array(os, inst.cost);
  os << ",\n  \"v\": ";
  write_array(os, inst.preference);
  if (inst.meta) {
    os << ",\n  \"meta\": {\"phi\": " << format_double(inst.meta->phi)
       << ", \"gamma\": " << format_double(inst.meta->gamma) << ", \"seed\": " << inst.meta->seed
       << "}";
  }
  os << "\n}\n";
}

void write_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_instance(inst, os);
  if (!os) throw std::runtime_error("write failed: " + path);
}

Instance read_instance(std::istream& is) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("invalid instance JSON: ") + e.what());
  }
  Instance inst;
  try {
    inst.n = doc.at("n").get<int>();
    inst.v0 = doc.at("v0").get<double>();
    inst.revenue = doc.at("r").get<std::vector<double>>();
    inst.cost = doc.at("c").get<std::vector<double>>();
    inst.preference = doc.at("v").get<std::vector<double>>();
    if (doc.contains("meta")) {
      const auto& m = doc["meta"];
      InstanceMeta meta;
      meta.phi = m.value("phi", 0.0);
      meta.gamma = m.value("gamma", 0.0);
      meta.seed = m.value("seed", std::uint64_t{0});
      inst.meta = meta;
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("invalid instance JSON: ") + e.what());
  }
  validate(inst);
  return inst;
}

Instance read_instance_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open instance file: " + path);
  return read_instance(is);
}

}  // namespace aopc
