// Command-line front end: single runs, named experiment suites, and the
// small-instance cost-tensor export.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dyntdd/engine.hpp"
#include "dyntdd/errors.hpp"
#include "dyntdd/game_oracle.hpp"
#include "dyntdd/suite.hpp"

namespace {

using namespace dyntdd;

// "1,2,7" or "1..10"
std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  const auto range = text.find("..");
  if (range != std::string::npos) {
    const std::uint64_t lo = std::stoull(text.substr(0, range));
    const std::uint64_t hi = std::stoull(text.substr(range + 2));
    if (hi < lo) throw ConfigError("seeds: range end below start");
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) seeds.push_back(std::stoull(item));
  }
  if (seeds.empty()) throw ConfigError("seeds: empty list");
  return seeds;
}

ScenarioConfig load_base_config(const std::string& path) {
  if (path.empty()) return ScenarioConfig{};
  return parse_config_file(path);
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory: " + dir);
}

template <class Writer>
void write_file(const std::string& path, Writer&& writer) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path);
  writer(out);
  if (!out) throw IoError("failed while writing file: " + path);
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::string& policy_override, std::uint64_t seed_override,
            bool have_seed, const std::string& topology_path,
            const std::string& inject_path, bool dump_flows, bool verbose) {
  ScenarioConfig cfg = load_base_config(config_path);
  if (!policy_override.empty()) {
    cfg.policy = policy_override;
    cfg.cell_policies.clear();
  }
  if (have_seed) cfg.seed = seed_override;
  cfg.validate();

  Engine engine = topology_path.empty()
                      ? Engine(cfg)
                      : Engine(cfg, load_topology_file(topology_path));
  if (!inject_path.empty()) {
    std::ifstream in(inject_path);
    if (!in) throw IoError("cannot read arrival trace: " + inject_path);
    for (const FlowRecord& f : load_arrival_trace(in)) {
      engine.inject_flow(f.cell, f.ue, f.direction, f.size_bits, f.arrival_s);
    }
  }
  const MetricsReport report = engine.run();

  if (verbose) {
    report.write_summary(std::cout);
  } else if (report.throughput.count > 0) {
    std::cout << "mean packet throughput: " << report.throughput.mean_bps / 1e6
              << " Mbit/s over " << report.throughput.count << " flows\n";
  } else {
    std::cout << "no completed flows\n";
  }

  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    write_file(out_dir + "/summary.txt",
               [&](std::ostream& o) { report.write_summary(o); });
    write_file(out_dir + "/trace.csv",
               [&](std::ostream& o) { report.write_frame_trace_csv(o); });
    write_file(out_dir + "/cost_trace.csv",
               [&](std::ostream& o) { report.write_cost_trace_csv(o); });
    save_topology_file(engine.topology(), out_dir + "/topology.txt");
    emit_traces(report, out_dir);
    if (report.config.trace_loads) {
      write_file(out_dir + "/loads.csv",
                 [&](std::ostream& o) { report.write_load_trace_csv(o); });
    }
    if (dump_flows) {
      write_file(out_dir + "/flows.csv", [&](std::ostream& o) {
        o << "arrival_s,cell,ue,direction,size_bits,completion_s,throughput_bps\n";
        char buf[160];
        for (const FlowRecord& f : engine.flows()) {
          std::snprintf(buf, sizeof buf, "%.17g,%d,%d,%s,%.17g,%.17g,%.17g\n",
                        f.arrival_s, f.cell, f.ue, to_string(f.direction),
                        f.size_bits, f.completion_s,
                        f.completed() ? f.throughput_bps() : 0.0);
          o << buf;
        }
      });
    }
  }
  return 0;
}

int cmd_suite(const std::string& name, const std::string& config_path,
              const std::string& out_dir, const std::string& seeds_text,
              int parallelism, bool verbose) {
  const ScenarioConfig base = load_base_config(config_path);
  const ExperimentSuite suite = make_suite(name, base, parse_seed_list(seeds_text));

  std::function<void(const SuiteVariant&, std::uint64_t, const MetricsReport&)> on_run;
  if (!out_dir.empty() && name == "fig56-convergence") {
    // convergence runs exist for their strategy traces; keep one dir per seed
    on_run = [&](const SuiteVariant& variant, std::uint64_t seed,
                 const MetricsReport& report) {
      emit_traces(report, out_dir + "/" + variant.variant + "_seed" +
                              std::to_string(seed));
    };
  } else if (verbose) {
    on_run = [](const SuiteVariant& variant, std::uint64_t seed,
                const MetricsReport& report) {
      std::cerr << variant.variant << " policy=" << variant.policy
                << " seed=" << seed << " mean="
                << report.throughput.mean_bps / 1e6 << " Mbit/s\n";
    };
  }

  const SuiteReport report = run_suite(suite, parallelism, on_run);
  write_suite_summary(report, std::cout);
  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    write_file(out_dir + "/" + name + ".csv",
               [&](std::ostream& o) { write_suite_summary(report, o); });
  }
  for (const SuiteRow& row : report.rows) {
    if (row.failed) {
      std::cerr << "variant " << row.variant << " (" << row.policy
                << ") failed: " << row.error << "\n";
      return 1;
    }
  }
  return 0;
}

int cmd_tensor(const std::string& config_path, const std::string& out_dir) {
  ScenarioConfig cfg = load_base_config(config_path);
  cfg.validate();
  OracleScenario scenario;
  scenario.topology = generate_topology(cfg.num_scbs, cfg.area_side_m,
                                        cfg.cell_radius_m, cfg.ues_per_cell, cfg.seed);
  scenario.power = cfg.power;
  scenario.wf = cfg.wf();
  scenario.rho_max = cfg.rho_max;
  for (int b = 0; b < cfg.num_scbs; ++b) {
    const TrafficProfile p = profile_from_ratio(cfg.offered_load_bps,
                                                cfg.cell_ratio_db(b),
                                                cfg.mean_file_size_bits);
    scenario.offered_bps.push_back({p.offered_ul_bps(), p.offered_dl_bps()});
  }
  const CostTensor tensor = build_cost_tensor(scenario);
  if (out_dir.empty()) {
    save_cost_tensor(tensor, std::cout);
  } else {
    ensure_dir(out_dir);
    write_file(out_dir + "/cost_tensor.csv",
               [&](std::ostream& o) { save_cost_tensor(tensor, o); });
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flow-level simulator for dynamic TDD uplink/downlink "
               "configuration in small-cell networks"};
  app.require_subcommand(1);

  std::string config_path, out_dir, policy_override, topology_path, inject_path;
  std::uint64_t seed = 0;
  bool dump_flows = false, verbose = false;

  auto* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("--config", config_path, "scenario config file (defaults apply)");
  run->add_option("--out", out_dir, "output directory for summary and traces");
  run->add_option("--policy", policy_override,
                  "override the policy for every cell (learner|fixed|random)");
  auto* seed_opt = run->add_option("--seed", seed, "override the run seed");
  run->add_option("--topology", topology_path, "replay a saved deployment file");
  run->add_option("--inject", inject_path, "replay an arrival trace file");
  run->add_flag("--flows", dump_flows, "dump the per-flow records");
  run->add_flag("-v,--verbose", verbose, "print the full summary");

  std::string suite_name, seeds_text = "1..10";
  int parallelism = 1;
  auto* suite = app.add_subcommand("suite", "Run a named experiment suite");
  suite->add_option("name", suite_name, "suite name")
      ->required()
      ->check(CLI::IsMember(dyntdd::builtin_suite_names()));
  suite->add_option("--config", config_path, "base scenario config file");
  suite->add_option("--out", out_dir, "output directory for the summary table");
  suite->add_option("--seeds", seeds_text, "replication seeds: list 1,2,3 or range 1..10");
  suite->add_option("--parallel", parallelism, "worker threads")
      ->check(CLI::PositiveNumber);
  suite->add_flag("-v,--verbose", verbose, "log each finished run");

  auto* tensor = app.add_subcommand(
      "tensor", "Enumerate the exact cost tensor of a small instance");
  tensor->add_option("--config", config_path, "scenario config file");
  tensor->add_option("--out", out_dir, "output directory (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmd_run(config_path, out_dir, policy_override, seed, !seed_opt->empty(),
                     topology_path, inject_path, dump_flows, verbose);
    }
    if (suite->parsed()) {
      return cmd_suite(suite_name, config_path, out_dir, seeds_text, parallelism,
                       verbose);
    }
    if (tensor->parsed()) {
      return cmd_tensor(config_path, out_dir);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
