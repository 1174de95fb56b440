#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "viaphy/error.hpp"
#include "viaphy/instance.hpp"
#include "viaphy/pd_oracle.hpp"
#include "viaphy/reductions.hpp"
#include "viaphy/report.hpp"
#include "viaphy/solvers.hpp"
#include "viaphy/viability.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw viaphy::ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// VIAPHY_LIMITS overrides the enumeration caps, e.g.
//   VIAPHY_LIMITS=max_seeds=200000,exact_cap=24
viaphy::SolverLimits limits_from_env() {
  viaphy::SolverLimits limits;
  const char* env = std::getenv("VIAPHY_LIMITS");
  if (!env) return limits;
  std::stringstream stream(env);
  std::string entry;
  while (std::getline(stream, entry, ',')) {
    if (entry.empty()) continue;
    auto eq = entry.find('=');
    if (eq == std::string::npos)
      throw viaphy::ParseError("VIAPHY_LIMITS entries must look like key=value");
    std::string key = entry.substr(0, eq);
    long long value = 0;
    try {
      std::size_t used = 0;
      value = std::stoll(entry.substr(eq + 1), &used);
      if (used != entry.size() - eq - 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw viaphy::ParseError("VIAPHY_LIMITS: bad value in '" + entry + "'");
    }
    if (key == "max_candidates") {
      limits.max_candidates = value;
    } else if (key == "max_seeds") {
      limits.max_seeds = value;
    } else if (key == "exact_cap") {
      limits.exact_species_cap = static_cast<int>(value);
    } else if (key == "max_heads") {
      limits.steiner.max_heads = static_cast<int>(value);
    } else {
      throw viaphy::ParseError("VIAPHY_LIMITS: unknown key '" + key + "'");
    }
  }
  return limits;
}

viaphy::Algorithm algorithm_from(const std::string& name) {
  if (name == "faller") return viaphy::Algorithm::kFaller;
  if (name == "greedy_p") return viaphy::Algorithm::kGreedyP;
  if (name == "enum_p") return viaphy::Algorithm::kEnumP;
  if (name == "exact") return viaphy::Algorithm::kExact;
  throw viaphy::ValidationError("unknown algorithm '" + name + "'");
}

viaphy::SpeciesSet parse_set_flag(const viaphy::Instance& inst,
                                  const std::string& csv) {
  std::vector<int> members;
  std::stringstream stream(csv);
  std::string name;
  while (std::getline(stream, name, ',')) {
    if (name.empty()) continue;
    auto index = inst.species_index(name);
    if (!index) throw viaphy::ValidationError("unknown species '" + name + "'");
    members.push_back(*index);
  }
  return viaphy::SpeciesSet(std::move(members));
}

void print_report(const viaphy::Instance& inst,
                  const viaphy::SolveReport& report) {
  std::cout << "algorithm: " << report.algorithm;
  if (report.p > 0) std::cout << " (p=" << report.p << ")";
  std::cout << "\n";
  std::cout << "n=" << inst.species_count() << " k=" << inst.budget
            << " d=" << viaphy::truncated_depth(inst.web, inst.budget).d
            << "\n";
  std::cout << "value: " << report.value << "\n";
  std::cout << "set: " << viaphy::format_species(inst, report.chosen) << "\n";
  std::cout << "viable: " << (report.viable ? "true" : "false") << "\n";
  std::cout << "iterations: " << report.iterations << "\n";
  std::cout << "oracle_calls: " << report.oracle_calls
            << " steiner_calls: " << report.steiner_calls << "\n";
  std::cout << "elapsed_ms: " << report.elapsed.count() / 1000 << "\n";
}

struct CommonArgs {
  std::string instance_path;
  std::string algorithm = "greedy_p";
  int p = 1;
  long long seed_cap = 0;
  int threads = 1;
  bool json = false;
};

viaphy::SolverConfig make_config(const CommonArgs& args) {
  viaphy::SolverConfig config;
  config.algorithm = algorithm_from(args.algorithm);
  config.p = args.p;
  config.limits = limits_from_env();
  if (args.seed_cap > 0) config.limits.max_seeds = args.seed_cap;
  config.threads = args.threads;
  return config;
}

int run(int argc, char** argv) {
  CLI::App app{"viaphy: phylogenetic diversity under food-web viability constraints"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string set_csv, kind, source_path, out_path;
  long long gen_k = 1;

  auto add_common = [&](CLI::App* cmd, bool with_algorithm) {
    cmd->add_option("instance", args.instance_path, "instance file")->required();
    if (with_algorithm) {
      cmd->add_option("--algorithm", args.algorithm,
                      "faller | greedy_p | enum_p | exact")
          ->check(CLI::IsMember({"faller", "greedy_p", "enum_p", "exact"}));
      cmd->add_option("--p", args.p, "subset-size parameter");
      cmd->add_option("--seed-cap", args.seed_cap, "enum_p seed cap");
      cmd->add_option("--threads", args.threads, "parallelism hint");
      cmd->add_flag("--json", args.json, "machine-readable report");
    }
  };

  auto* solve_cmd = app.add_subcommand("solve", "run a solver on an instance");
  add_common(solve_cmd, true);
  auto* verify_cmd =
      app.add_subcommand("verify", "compare a solver against the exact optimum");
  add_common(verify_cmd, true);

  auto* check_cmd = app.add_subcommand("check", "test a set for viability");
  add_common(check_cmd, false);
  check_cmd->add_option("--set", set_csv, "comma-separated species names")->required();

  auto* pd_cmd = app.add_subcommand("pd", "phylogenetic diversity of a set");
  add_common(pd_cmd, false);
  pd_cmd->add_option("--set", set_csv, "comma-separated species names")->required();

  auto* extend_cmd =
      app.add_subcommand("extend", "minimum viable extension of a set");
  add_common(extend_cmd, false);
  extend_cmd->add_option("--set", set_csv, "comma-separated species names")->required();

  auto* depth_cmd = app.add_subcommand("depth", "truncated depth of the food web");
  add_common(depth_cmd, false);

  auto* generate_cmd =
      app.add_subcommand("generate", "build an instance from a source problem");
  generate_cmd->add_option("--kind", kind, "maxcov | vc | sat")
      ->required()
      ->check(CLI::IsMember({"maxcov", "vc", "sat"}));
  generate_cmd->add_option("source", source_path, "source problem file")->required();
  generate_cmd->add_option("--k", gen_k, "source-problem budget (maxcov, vc)");
  generate_cmd->add_option("--out", out_path, "output instance file")->required();

  CLI11_PARSE(app, argc, argv);

  if (generate_cmd->parsed()) {
    std::string text = read_file(source_path);
    viaphy::Instance inst;
    if (kind == "maxcov") {
      inst = viaphy::generate_maxcov(viaphy::parse_coverage(text, gen_k));
    } else if (kind == "vc") {
      inst = viaphy::generate_vertexcover(viaphy::parse_graph(text, gen_k));
    } else {
      inst = viaphy::generate_sat(viaphy::parse_dimacs(text));
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw viaphy::ParseError("cannot write '" + out_path + "'");
    out << viaphy::serialize_instance(inst);
    std::cout << "wrote " << out_path << " (n=" << inst.species_count()
              << ", k=" << inst.budget
              << (inst.generalized ? ", generalized" : "") << ")\n";
    return 0;
  }

  viaphy::Instance inst = viaphy::parse_instance(read_file(args.instance_path));
  viaphy::PdOracle oracle(inst.tree);

  if (solve_cmd->parsed()) {
    viaphy::SolverConfig config = make_config(args);
    viaphy::SolveReport report = viaphy::solve(inst, oracle, config);
    if (args.json) {
      std::cout << viaphy::report_json(inst, report).dump() << "\n";
    } else {
      print_report(inst, report);
    }
    return 0;
  }

  if (verify_cmd->parsed()) {
    viaphy::SolverConfig config = make_config(args);
    viaphy::SolveReport report = viaphy::solve(inst, oracle, config);
    viaphy::SolverConfig exact_config = config;
    exact_config.algorithm = viaphy::Algorithm::kExact;
    viaphy::SolveReport exact = viaphy::solve_exact(inst, oracle, exact_config);

    viaphy::VerifyExtras extras;
    extras.optimum = exact.value;
    extras.ratio = exact.value == 0
                       ? 1.0
                       : static_cast<double>(report.value) / exact.value;
    int d = viaphy::truncated_depth(inst.web, inst.budget).d;
    extras.floor = viaphy::approximation_floor(config.algorithm, config.p, d);

    if (args.json) {
      std::cout << viaphy::report_json(inst, report, extras).dump() << "\n";
    } else {
      print_report(inst, report);
      std::cout << "optimum: " << extras.optimum << "\n";
      std::cout << "ratio: " << extras.ratio << "\n";
      if (extras.floor) {
        std::cout << "floor: " << *extras.floor << "\n";
        std::cout << (extras.ratio >= *extras.floor - 1e-9 ? "PASS" : "FAIL")
                  << "\n";
      } else {
        std::cout << "floor: n/a (no guarantee)\n";
      }
    }
    return 0;
  }

  if (check_cmd->parsed()) {
    viaphy::SpeciesSet s = parse_set_flag(inst, set_csv);
    std::cout << (viaphy::is_viable(s, inst.web) ? "true" : "false") << "\n";
    return 0;
  }
  if (pd_cmd->parsed()) {
    viaphy::SpeciesSet s = parse_set_flag(inst, set_csv);
    std::cout << oracle.value(s) << "\n";
    return 0;
  }
  if (extend_cmd->parsed()) {
    viaphy::SpeciesSet s = parse_set_flag(inst, set_csv);
    viaphy::SpeciesSet extended = viaphy::viable_extension(s, inst.web);
    std::cout << viaphy::format_species(inst, extended) << "\n";
    return 0;
  }
  if (depth_cmd->parsed()) {
    viaphy::DepthInfo info = viaphy::truncated_depth(inst.web, inst.budget);
    std::cout << "longest_path_len=" << info.longest_path_len
              << " d=" << info.d << "\n";
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const viaphy::CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
