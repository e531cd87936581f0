#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aopc/bench.hpp"
#include "aopc/bounding.hpp"
#include "aopc/brute_force.hpp"
#include "aopc/generator.hpp"
#include "aopc/grid.hpp"
#include "aopc/instance_io.hpp"
#include "aopc/lp_export.hpp"
#include "aopc/solver.hpp"

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

// Exit codes: 0 solved to optimality, 1 usage or runtime error, 2 time limit.
constexpr int kExitOptimal = 0;
constexpr int kExitError = 1;
constexpr int kExitTimeLimit = 2;

json json_num(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

std::optional<int> parse_kappa(const std::string& text, int n) {
  if (text.empty() || text == "none") return std::nullopt;
  if (text == "n/2") return (n + 1) / 2;
  size_t pos = 0;
  int k = std::stoi(text, &pos);
  if (pos != text.size()) throw std::invalid_argument("bad --kappa value: " + text);
  if (k < 0) throw std::invalid_argument("--kappa must be nonnegative");
  return k;
}

std::string status_name(aopc::SolveStatus s) {
  switch (s) {
    case aopc::SolveStatus::kOptimal: return "optimal";
    case aopc::SolveStatus::kTimeLimit: return "time_limit";
    case aopc::SolveStatus::kInfeasibleWindow: return "infeasible_window";
  }
  return "unknown";
}

std::vector<int> selected_ids(const std::vector<std::uint8_t>& sel) {
  std::vector<int> ids;
  for (size_t j = 0; j < sel.size(); ++j) {
    if (sel[j]) ids.push_back(static_cast<int>(j));
  }
  return ids;
}

std::string trim_number(double x) {
  std::string s = aopc::format_double(x);
  return s;
}

int cmd_generate(int n, double phi, double gamma, std::uint64_t seed, int count,
                 const std::string& out_dir) {
  aopc::GeneratorConfig cfg;
  cfg.n = n;
  cfg.phi = phi;
  cfg.gamma = gamma;
  cfg.seed = seed;
  cfg.count = count;
  const std::vector<aopc::Instance> instances = aopc::generate(cfg);

  std::filesystem::create_directories(out_dir);
  char tag[160];
  for (size_t i = 0; i < instances.size(); ++i) {
    std::snprintf(tag, sizeof(tag), "inst_n%d_phi%g_gamma%g_seed%llu_%03zu.json",
                  n, phi, gamma, static_cast<unsigned long long>(seed), i);
    const std::string path = (std::filesystem::path(out_dir) / tag).string();
    aopc::write_instance_file(instances[i], path);
    std::cout << path << "\n";
  }
  return kExitOptimal;
}

json bounding_json(const aopc::BoundingSummary& b) {
  json stages = json::array();
  for (const aopc::StageSummary& s : b.stages) {
    stages.push_back({{"rho", s.rho},
                      {"grid_size", s.grid_size},
                      {"lb", s.lb},
                      {"ub", json_num(s.ub)},
                      {"evaluated", s.evaluated},
                      {"surviving", s.surviving},
                      {"fixed", s.fixed}});
  }
  return {{"lb", b.lb},
          {"ub", json_num(b.ub)},
          {"window_lo", b.window_lo},
          {"window_hi", b.window_hi},
          {"intervals_evaluated", b.intervals_evaluated},
          {"rho_final", b.rho_final},
          {"lagrangian_step_capped", b.lagrangian_step_capped},
          {"stages", stages}};
}

int cmd_solve(const std::string& path, const aopc::SolveParams& base,
              const std::string& kappa_text, bool as_json, bool compare_full_grid) {
  const aopc::Instance inst = aopc::read_instance_file(path);
  aopc::SolveParams params = base;
  params.kappa = parse_kappa(kappa_text, inst.n);

  const aopc::SolveResult res = aopc::solve(inst, params);
  const double gap_pct =
      100.0 * (res.proven_ub - res.best_profit) / std::max(res.proven_ub, 1e-12);

  json cmp;
  if (compare_full_grid) {
    const aopc::Instance norm = aopc::normalize(inst);
    const double p_min = 1.0 / (1.0 + norm.preference_sum());
    const aopc::GridSpec fine = aopc::build_grid_for_pmin(p_min, params.rho_last);
    if (inst.n > 200 || fine.K > 2'000'000) {
      std::cerr << "error: --compare-full-grid needs n <= 200 and a final grid of "
                   "at most 2e6 intervals (this one has "
                << fine.K << "); rerun with a coarser --rho-last\n";
      return kExitError;
    }
    aopc::BoundingOptions opts;
    opts.kappa = params.kappa;
    opts.delta = params.delta;
    opts.gap_tolerance = 0;  // run the ladder all the way down to rho_last
    aopc::BoundingResult seq =
        aopc::sequential_bound(norm, params.rho_first, params.rho_last, opts);
    aopc::BoundingResult full = aopc::full_grid_bound(norm, fine, opts);
    cmp = {{"sequential_ub", seq.ub},
           {"full_grid_ub", full.ub},
           {"abs_diff", std::abs(seq.ub - full.ub)},
           {"sequential_intervals", seq.intervals_evaluated},
           {"full_grid_intervals", full.intervals_evaluated}};
  }

  if (as_json) {
    json doc = {
        {"schema_version", kSchemaVersion},
        {"status", status_name(res.status)},
        {"n", inst.n},
        {"kappa", params.kappa ? json(*params.kappa) : json(nullptr)},
        {"profit", res.best_profit},
        {"proven_ub", json_num(res.proven_ub)},
        {"gap_pct", json_num(gap_pct)},
        {"selection", selected_ids(res.best_selection)},
        {"nodes", res.nodes_explored},
        {"wall_seconds", res.wall_time_seconds},
        {"bounding", bounding_json(res.bounding)},
        {"fixing",
         {{"removed", res.fixing.fixed_out.size()},
          {"by_rule1", res.fixing.by_rule1},
          {"by_rule2", res.fixing.by_rule2},
          {"active_remaining", res.fixing.active_remaining}}},
    };
    if (!cmp.is_null()) doc["compare_full_grid"] = cmp;
    std::cout << doc.dump(2) << "\n";
  } else {
    const std::vector<int> ids = selected_ids(res.best_selection);
    std::cout << "status: " << status_name(res.status) << "\n";
    std::cout << "profit: " << trim_number(res.best_profit) << "\n";
    std::cout << "proven upper bound: " << trim_number(res.proven_ub) << "\n";
    std::cout << "gap: " << trim_number(gap_pct) << "%\n";
    std::cout << "selection (" << ids.size() << " products):";
    for (int j : ids) std::cout << ' ' << j;
    std::cout << "\n";
    std::cout << "nodes: " << res.nodes_explored
              << ", wall seconds: " << trim_number(res.wall_time_seconds) << "\n";
    std::cout << "bounding: lb " << trim_number(res.bounding.lb) << ", ub "
              << trim_number(res.bounding.ub) << ", window ["
              << trim_number(res.bounding.window_lo) << ", "
              << trim_number(res.bounding.window_hi) << "], intervals "
              << res.bounding.intervals_evaluated << ", stages "
              << res.bounding.stages.size() << "\n";
    std::cout << "fixing: rule1 " << res.fixing.by_rule1 << ", rule2 "
              << res.fixing.by_rule2 << ", active remaining "
              << res.fixing.active_remaining << "\n";
    if (!cmp.is_null()) {
      std::cout << "full-grid check: sequential ub "
                << trim_number(cmp["sequential_ub"].get<double>())
                << ", full grid ub "
                << trim_number(cmp["full_grid_ub"].get<double>()) << ", diff "
                << trim_number(cmp["abs_diff"].get<double>()) << "\n";
    }
  }
  return res.status == aopc::SolveStatus::kTimeLimit ? kExitTimeLimit : kExitOptimal;
}

int cmd_oracle(const std::string& path, const std::string& kappa_text, bool as_json) {
  const aopc::Instance inst = aopc::read_instance_file(path);
  if (inst.n > 25) {
    std::cerr << "error: exhaustive oracle is limited to n <= 25 (got n=" << inst.n
              << ")\n";
    return kExitError;
  }
  const std::optional<int> kappa = parse_kappa(kappa_text, inst.n);
  const aopc::SolveResult res = aopc::brute_force_optimum(inst, kappa);
  const std::vector<int> ids = selected_ids(res.best_selection);
  if (as_json) {
    json doc = {{"schema_version", kSchemaVersion},
                {"profit", res.best_profit},
                {"selection", ids},
                {"kappa", kappa ? json(*kappa) : json(nullptr)}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "profit: " << trim_number(res.best_profit) << "\n";
    std::cout << "selection (" << ids.size() << " products):";
    for (int j : ids) std::cout << ' ' << j;
    std::cout << "\n";
  }
  return kExitOptimal;
}

int cmd_export_lp(const std::string& path, const std::string& out,
                  const std::vector<double>& window, const std::string& kappa_text) {
  const aopc::Instance inst = aopc::read_instance_file(path);
  aopc::LpExportOptions opts;
  if (!window.empty()) {
    opts.window_lo = window[0];
    opts.window_hi = window[1];
  }
  opts.kappa = parse_kappa(kappa_text, inst.n);
  if (out.empty() || out == "-") {
    aopc::write_lp(inst, std::cout, opts);
  } else {
    aopc::write_lp_file(inst, out, opts);
  }
  return kExitOptimal;
}

int cmd_bench(const std::vector<int>& ns, const std::vector<double>& phis,
              const std::vector<double>& gammas, int count, std::uint64_t seed,
              const std::string& kappa_text, const aopc::SolveParams& base,
              int jobs, const std::string& csv_path, const std::string& md_path) {
  std::vector<aopc::BenchRow> rows;
  std::cout << aopc::bench_csv_header() << "\n";
  for (int n : ns) {
    for (double phi : phis) {
      for (double gamma : gammas) {
        aopc::BenchConfig cfg;
        cfg.n = n;
        cfg.phi = phi;
        cfg.gamma = gamma;
        cfg.count = count;
        cfg.seed = seed;
        if (kappa_text == "n/2") {
          cfg.kappa_half = true;
        } else {
          cfg.kappa = parse_kappa(kappa_text, n);
        }
        rows.push_back(aopc::run_bench(cfg, base, jobs));
        std::cout << aopc::bench_csv_row(rows.back()) << std::endl;
      }
    }
  }
  if (!csv_path.empty()) {
    std::ofstream f(csv_path);
    if (!f) throw std::runtime_error("cannot open " + csv_path);
    f << aopc::bench_csv_header() << "\n";
    for (const auto& r : rows) f << aopc::bench_csv_row(r) << "\n";
  }
  if (!md_path.empty()) {
    std::ofstream f(md_path);
    if (!f) throw std::runtime_error("cannot open " + md_path);
    f << aopc::bench_markdown(rows);
  }
  return kExitOptimal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact assortment optimization with product costs"};
  app.require_subcommand(1);

  // generate
  int g_n = 100;
  double g_phi = 0.25, g_gamma = 0.5;
  std::uint64_t g_seed = 1;
  int g_count = 1;
  std::string g_out = ".";
  CLI::App* gen = app.add_subcommand("generate", "Write random instances as JSON files");
  gen->add_option("--n", g_n, "products per instance")->capture_default_str();
  gen->add_option("--phi", g_phi, "no-purchase share in (0,1)")->capture_default_str();
  gen->add_option("--gamma", g_gamma, "cost level >= 0")->capture_default_str();
  gen->add_option("--seed", g_seed, "base seed; instance i uses seed+i")->capture_default_str();
  gen->add_option("--count", g_count, "number of instances")->capture_default_str();
  gen->add_option("--out", g_out, "output directory")->capture_default_str();

  // shared solve parameters
  aopc::SolveParams sp;
  std::string s_path, s_kappa;
  bool s_json = false, s_no_fixing = false, s_union = false, s_compare = false;

  CLI::App* slv = app.add_subcommand("solve", "Solve one instance exactly");
  slv->add_option("--instance", s_path, "instance JSON file")->required();
  slv->add_option("--rho-first", sp.rho_first, "coarsest grid accuracy")->capture_default_str();
  slv->add_option("--rho-last", sp.rho_last, "finest grid accuracy")->capture_default_str();
  slv->add_option("--kappa", s_kappa, "max products: integer or n/2");
  slv->add_option("--delta", sp.delta, "Lagrangian step")->capture_default_str();
  slv->add_option("--time-limit", sp.time_limit_seconds, "seconds")->capture_default_str();
  slv->add_option("--tolerance", sp.tolerance, "optimality tolerance")->capture_default_str();
  slv->add_flag("--json", s_json, "emit a JSON document on stdout");
  slv->add_flag("--no-fixing", s_no_fixing, "disable variable fixing");
  slv->add_flag("--restrict-to-union", s_union,
                "accept incumbents only inside surviving spans");
  slv->add_flag("--compare-full-grid", s_compare,
                "also evaluate every interval of the finest grid and compare bounds");

  // oracle
  std::string o_path, o_kappa;
  bool o_json = false;
  CLI::App* orc = app.add_subcommand("oracle", "Exhaustive reference optimum (n <= 25)");
  orc->add_option("--instance", o_path, "instance JSON file")->required();
  orc->add_option("--kappa", o_kappa, "max products: integer or n/2");
  orc->add_flag("--json", o_json, "emit a JSON document on stdout");

  // export-lp
  std::string e_path, e_out = "-", e_kappa;
  std::vector<double> e_window;
  CLI::App* exp = app.add_subcommand("export-lp", "Write the MILP in LP file format");
  exp->add_option("--instance", e_path, "instance JSON file")->required();
  exp->add_option("--out", e_out, "output file, - for stdout")->capture_default_str();
  exp->add_option("--window", e_window, "bounds LO HI on the no-purchase probability")
      ->expected(2);
  exp->add_option("--kappa", e_kappa, "max products: integer or n/2");

  // bench
  std::vector<int> b_ns{100};
  std::vector<double> b_phis{0.25}, b_gammas{0.5};
  int b_count = 10, b_jobs = 1;
  std::uint64_t b_seed = 1;
  std::string b_kappa, b_csv, b_md;
  aopc::SolveParams bp;
  CLI::App* ben = app.add_subcommand("bench", "Generate and solve a grid of configurations");
  ben->add_option("--n", b_ns, "product counts")->delimiter(',')->capture_default_str();
  ben->add_option("--phi", b_phis, "no-purchase shares")->delimiter(',')->capture_default_str();
  ben->add_option("--gamma", b_gammas, "cost levels")->delimiter(',')->capture_default_str();
  ben->add_option("--count", b_count, "instances per configuration")->capture_default_str();
  ben->add_option("--seed", b_seed, "base seed")->capture_default_str();
  ben->add_option("--kappa", b_kappa, "max products: integer, n/2, or none");
  ben->add_option("--rho-first", bp.rho_first, "coarsest grid accuracy")->capture_default_str();
  ben->add_option("--rho-last", bp.rho_last, "finest grid accuracy")->capture_default_str();
  ben->add_option("--time-limit", bp.time_limit_seconds, "seconds per instance")
      ->capture_default_str();
  ben->add_option("--jobs", b_jobs, "worker threads")->capture_default_str();
  ben->add_option("--csv", b_csv, "also write the table to this CSV file");
  ben->add_option("--md", b_md, "also write the table as Markdown");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*gen) return cmd_generate(g_n, g_phi, g_gamma, g_seed, g_count, g_out);
    if (*slv) {
      sp.enable_fixing = !s_no_fixing;
      sp.restrict_to_union = s_union;
      return cmd_solve(s_path, sp, s_kappa, s_json, s_compare);
    }
    if (*orc) return cmd_oracle(o_path, o_kappa, o_json);
    if (*exp) return cmd_export_lp(e_path, e_out, e_window, e_kappa);
    if (*ben) {
      return cmd_bench(b_ns, b_phis, b_gammas, b_count, b_seed, b_kappa, bp,
                       b_jobs, b_csv, b_md);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
