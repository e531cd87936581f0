#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "aopc/brute_force.hpp"
#include "aopc/instance_io.hpp"
#include "aopc/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr merged
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(AOPC_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult res;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) res.output.append(buf, got);
  const int rc = ::pclose(pipe);
  res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return res;
}

fs::path fresh_dir(const std::string& leaf) {
  const fs::path dir = fs::temp_directory_path() / "aopc_cli_tests" / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::vector<int> selected_ids(const std::vector<std::uint8_t>& sel) {
  std::vector<int> ids;
  for (std::size_t j = 0; j < sel.size(); ++j)
    if (sel[j]) ids.push_back(static_cast<int>(j));
  return ids;
}

// Writes one instance and returns its path.
fs::path make_instance_file(const fs::path& dir, int n, std::uint64_t seed,
                            double gamma = 0.5) {
  std::ostringstream args;
  args << "generate --n " << n << " --seed " << seed << " --gamma " << gamma
       << " --count 1 --out " << dir.string();
  const CliResult res = run_cli(args.str());
  REQUIRE(res.exit_code == 0);
  const std::vector<std::string> paths = lines_of(res.output);
  REQUIRE(paths.size() == 1);
  return fs::path(paths[0]);
}

}  // namespace

TEST_CASE("generate is deterministic and self-describing") {
  const fs::path a = fresh_dir("gen_a");
  const fs::path b = fresh_dir("gen_b");
  const std::string tail = "generate --n 12 --count 3 --seed 42 --out ";
  const CliResult ra = run_cli(tail + a.string());
  const CliResult rb = run_cli(tail + b.string());
  CHECK(ra.exit_code == 0);
  CHECK(rb.exit_code == 0);

  const std::vector<std::string> files_a = lines_of(ra.output);
  const std::vector<std::string> files_b = lines_of(rb.output);
  REQUIRE(files_a.size() == 3);
  REQUIRE(files_b.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(fs::path(files_a[i]).filename() == fs::path(files_b[i]).filename());
    CHECK(slurp(files_a[i]) == slurp(files_b[i]));
  }
  CHECK(fs::path(files_a[0]).filename().string() ==
        "inst_n12_phi0.25_gamma0.5_seed42_000.json");

  // The files parse back with the advertised metadata.
  const aopc::Instance first = aopc::read_instance_file(files_a[0]);
  const aopc::Instance last = aopc::read_instance_file(files_a[2]);
  CHECK(first.n == 12);
  REQUIRE(first.meta.has_value());
  CHECK(first.meta->seed == 42);
  REQUIRE(last.meta.has_value());
  CHECK(last.meta->seed == 44);  // instance i uses seed + i
}

TEST_CASE("solve emits a faithful machine-readable result") {
  const fs::path dir = fresh_dir("solve_json");
  const fs::path inst_path = make_instance_file(dir, 10, 7);

  const CliResult res =
      run_cli("solve --instance " + inst_path.string() + " --rho-last 1e-4 --json");
  REQUIRE(res.exit_code == 0);
  const json doc = json::parse(res.output);

  aopc::SolveParams params;
  params.rho_last = 1e-4;
  const aopc::SolveResult lib = aopc::solve(aopc::read_instance_file(inst_path), params);

  CHECK(doc.at("schema_version").get<int>() == 1);
  CHECK(doc.at("status").get<std::string>() == "optimal");
  CHECK(doc.at("n").get<int>() == 10);
  CHECK(doc.at("kappa").is_null());
  // Identical deterministic runs, and JSON round-trips doubles exactly.
  CHECK(doc.at("profit").get<double>() == lib.best_profit);
  CHECK(doc.at("proven_ub").get<double>() == lib.proven_ub);
  CHECK(doc.at("nodes").get<std::uint64_t>() == lib.nodes_explored);
  CHECK(doc.at("selection").get<std::vector<int>>() == selected_ids(lib.best_selection));
  CHECK(doc.at("gap_pct").get<double>() <= 1e-7);
  CHECK(doc.at("bounding").at("stages").size() == lib.bounding.stages.size());
  const json& fixing = doc.at("fixing");
  CHECK(fixing.at("removed").get<int>() + fixing.at("active_remaining").get<int>() == 10);

  // Plain-text mode reports the same headline numbers.
  const CliResult text =
      run_cli("solve --instance " + inst_path.string() + " --rho-last 1e-4");
  CHECK(text.exit_code == 0);
  CHECK(text.output.find("status: optimal") != std::string::npos);
  CHECK(text.output.find("profit: ") != std::string::npos);
  CHECK(text.output.find("selection (") != std::string::npos);
}

TEST_CASE("oracle matches the library and enforces its size guard") {
  const fs::path dir = fresh_dir("oracle");
  const fs::path small = make_instance_file(dir, 10, 3);
  const CliResult res = run_cli("oracle --instance " + small.string() + " --json");
  REQUIRE(res.exit_code == 0);
  const json doc = json::parse(res.output);
  const aopc::SolveResult lib =
      aopc::brute_force_optimum(aopc::read_instance_file(small));
  CHECK(doc.at("profit").get<double>() == lib.best_profit);
  CHECK(doc.at("selection").get<std::vector<int>>() == selected_ids(lib.best_selection));
  CHECK(doc.at("kappa").is_null());

  const CliResult capped = run_cli("oracle --instance " + small.string() +
                                   " --kappa 3 --json");
  REQUIRE(capped.exit_code == 0);
  const json capped_doc = json::parse(capped.output);
  CHECK(capped_doc.at("kappa").get<int>() == 3);
  CHECK(capped_doc.at("profit").get<double>() ==
        aopc::brute_force_optimum(aopc::read_instance_file(small), 3).best_profit);

  const fs::path big = make_instance_file(dir, 30, 4);
  const CliResult guard = run_cli("oracle --instance " + big.string());
  CHECK(guard.exit_code == 1);
  CHECK(guard.output.find("error") != std::string::npos);
}

TEST_CASE("kappa accepts integers, n/2, and none") {
  const fs::path dir = fresh_dir("kappa");
  const fs::path inst_path = make_instance_file(dir, 11, 5);
  const std::string base = "solve --instance " + inst_path.string() + " --rho-last 1e-4 --json";

  const CliResult half = run_cli(base + " --kappa n/2");
  REQUIRE(half.exit_code == 0);
  CHECK(json::parse(half.output).at("kappa").get<int>() == 6);  // ceil(11/2)

  const CliResult none = run_cli(base + " --kappa none");
  REQUIRE(none.exit_code == 0);
  CHECK(json::parse(none.output).at("kappa").is_null());

  const CliResult three = run_cli(base + " --kappa 3");
  REQUIRE(three.exit_code == 0);
  const json doc = json::parse(three.output);
  CHECK(doc.at("kappa").get<int>() == 3);
  CHECK(doc.at("selection").size() <= 3);

  CHECK(run_cli(base + " --kappa -2").exit_code == 1);
  CHECK(run_cli(base + " --kappa 2x").exit_code == 1);
}

TEST_CASE("hitting the time limit is reported through the exit code") {
  const fs::path dir = fresh_dir("timeout");
  const fs::path inst_path = make_instance_file(dir, 500, 77, 1.0);
  const CliResult res = run_cli("solve --instance " + inst_path.string() +
                                " --time-limit 0.001 --json");
  CHECK(res.exit_code == 2);
  const json doc = json::parse(res.output);
  CHECK(doc.at("status").get<std::string>() == "time_limit");
  CHECK(doc.at("profit").get<double>() <= doc.at("proven_ub").get<double>() + 1e-12);
}

TEST_CASE("bench prints the documented table and mirrors it to CSV") {
  const fs::path dir = fresh_dir("bench");
  const fs::path csv = dir / "table.csv";
  const CliResult res = run_cli("bench --n 8 --count 2 --seed 5 --rho-last 1e-4 --csv " +
                                csv.string());
  REQUIRE(res.exit_code == 0);
  const std::vector<std::string> out = lines_of(res.output);
  REQUIRE(out.size() >= 2);
  CHECK(out[0] ==
        "n,phi,gamma,kappa,count,opt,gap,cpu_avg,cpu_max,gap_dual,gap_prim,"
        "opt_prim,#out,%out,#int,%int");
  const std::vector<std::string> fields = split_csv(out[1]);
  REQUIRE(fields.size() == 16);
  CHECK(fields[0] == "8");
  CHECK(fields[1] == "0.25");
  CHECK(fields[2] == "0.5");
  CHECK(fields[3].empty());  // unconstrained
  CHECK(fields[4] == "2");
  CHECK(fields[5] == "2");  // both instances solved to optimality

  const std::vector<std::string> file_lines = lines_of(slurp(csv));
  REQUIRE(file_lines.size() == 2);
  CHECK(file_lines[0] == out[0]);
  CHECK(file_lines[1] == out[1]);

  const CliResult half = run_cli("bench --n 8 --count 1 --seed 5 --rho-last 1e-4 --kappa n/2");
  REQUIRE(half.exit_code == 0);
  const std::vector<std::string> half_fields = split_csv(lines_of(half.output)[1]);
  CHECK(half_fields[3] == "4");  // ceil(8/2)
}

TEST_CASE("export-lp writes the same model to stdout and to a file") {
  const fs::path dir = fresh_dir("export");
  const fs::path inst_path = make_instance_file(dir, 6, 21);
  const std::string base = "export-lp --instance " + inst_path.string();

  const CliResult to_stdout = run_cli(base);
  REQUIRE(to_stdout.exit_code == 0);
  CHECK(to_stdout.output.rfind("\\ ", 0) == 0);
  CHECK(to_stdout.output.find(" ratio6:") != std::string::npos);
  CHECK(to_stdout.output.find(" force6:") != std::string::npos);
  CHECK(to_stdout.output.find(" conv:") != std::string::npos);
  CHECK(to_stdout.output.rfind("End\n") == to_stdout.output.size() - 4);

  const fs::path lp_file = dir / "model.lp";
  const CliResult to_file = run_cli(base + " --out " + lp_file.string());
  REQUIRE(to_file.exit_code == 0);
  CHECK(slurp(lp_file) == to_stdout.output);

  const CliResult constrained = run_cli(base + " --window 0.3 0.7 --kappa 2");
  REQUIRE(constrained.exit_code == 0);
  CHECK(constrained.output.find("Bounds") != std::string::npos);
  CHECK(constrained.output.find(" card:") != std::string::npos);

  CHECK(run_cli(base + " --window 0.9 0.2").exit_code == 1);
}

TEST_CASE("missing or malformed inputs fail cleanly") {
  const fs::path dir = fresh_dir("bad_input");
  CHECK(run_cli("solve --instance " + (dir / "nope.json").string()).exit_code == 1);

  const fs::path junk = dir / "junk.json";
  std::ofstream(junk) << "{ not json";
  CHECK(run_cli("solve --instance " + junk.string()).exit_code == 1);
  CHECK(run_cli("oracle --instance " + junk.string()).exit_code == 1);

  // Unknown subcommands and missing required options are usage errors.
  CHECK(run_cli("frobnicate").exit_code != 0);
  CHECK(run_cli("solve").exit_code != 0);
}
