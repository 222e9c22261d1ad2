#include "dyntdd/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "dyntdd/errors.hpp"

namespace dyntdd {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string ratio_label(double db) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", db);
  return buf;
}

const std::vector<std::string> kPolicies = {"learner", "fixed", "random"};

}  // namespace

std::vector<std::string> builtin_suite_names() {
  return {"fig3-ratio-sweep", "fig4-opposite-ratios", "fig5-cell-count",
          "fig56-convergence"};
}

ExperimentSuite make_suite(const std::string& name, const ScenarioConfig& base,
                           std::vector<std::uint64_t> seeds) {
  if (seeds.empty()) throw ConfigError("suite: need at least one seed");
  ExperimentSuite suite;
  suite.name = name;
  suite.seeds = std::move(seeds);

  if (name == "fig3-ratio-sweep") {
    for (double ratio : {-20.0, -10.0, 0.0, 10.0, 20.0}) {
      for (const auto& policy : kPolicies) {
        ScenarioConfig cfg = base;
        cfg.cell_ratios_db.clear();
        cfg.ratio_db = ratio;
        cfg.policy = policy;
        cfg.cell_policies.clear();
        suite.variants.push_back({"ratio_" + ratio_label(ratio) + "dB", policy, cfg});
      }
    }
  } else if (name == "fig4-opposite-ratios") {
    for (double r : {10.0, 20.0}) {
      for (const auto& policy : kPolicies) {
        ScenarioConfig cfg = base;
        cfg.cell_ratios_db.assign(cfg.num_scbs, r);
        for (int b = cfg.num_scbs / 2; b < cfg.num_scbs; ++b)
          cfg.cell_ratios_db[b] = -r;
        cfg.policy = policy;
        cfg.cell_policies.clear();
        suite.variants.push_back({"opposite_" + ratio_label(r) + "dB", policy, cfg});
      }
    }
  } else if (name == "fig5-cell-count") {
    for (int cells : {2, 4, 6, 8, 10}) {
      for (const auto& policy : kPolicies) {
        ScenarioConfig cfg = base;
        cfg.num_scbs = cells;
        cfg.cell_ratios_db.clear();
        cfg.cell_one_over_beta.clear();
        cfg.ratio_db = 10.0;
        cfg.policy = policy;
        cfg.cell_policies.clear();
        suite.variants.push_back({"cells_" + std::to_string(cells), policy, cfg});
      }
    }
  } else if (name == "fig56-convergence") {
    ScenarioConfig cfg = base;
    cfg.num_scbs = 2;
    cfg.cell_ratios_db = {20.0, -20.0};
    cfg.cell_one_over_beta.clear();
    cfg.policy = "learner";
    cfg.cell_policies.clear();
    // learning phase only: the traces are the product here
    cfg.sim_subframes = static_cast<long>(cfg.learning.max_learning_frames) * cfg.wf();
    suite.variants.push_back({"convergence_pm20dB", "learner", cfg});
  } else {
    throw ConfigError("suite: unknown name '" + name + "'");
  }

  for (auto& variant : suite.variants) variant.config.validate();
  return suite;
}

SuiteReport run_suite(
    const ExperimentSuite& suite, int parallelism,
    const std::function<void(const SuiteVariant&, std::uint64_t,
                             const MetricsReport&)>& on_run) {
  if (parallelism < 1) throw ConfigError("suite: parallelism must be >= 1");

  struct Outcome {
    bool ok = false;
    std::string error;
    double mean_bps = 0.0;
    double ul_bps = 0.0;
    double dl_bps = 0.0;
    long completed = 0;
  };

  const std::size_t num_tasks = suite.variants.size() * suite.seeds.size();
  std::vector<Outcome> outcomes(num_tasks);
  std::atomic<std::size_t> next{0};
  std::mutex callback_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= num_tasks) return;
      const std::size_t vi = task / suite.seeds.size();
      const std::size_t si = task % suite.seeds.size();
      Outcome& out = outcomes[task];
      try {
        ScenarioConfig cfg = suite.variants[vi].config;
        cfg.seed = suite.seeds[si];
        const MetricsReport report = run_simulation(cfg);
        out.ok = true;
        out.mean_bps = report.throughput.mean_bps;
        out.ul_bps = report.throughput.mean_ul_bps;
        out.dl_bps = report.throughput.mean_dl_bps;
        out.completed = report.flows_completed;
        if (on_run) {
          std::lock_guard<std::mutex> lock(callback_mutex);
          on_run(suite.variants[vi], suite.seeds[si], report);
        }
      } catch (const std::exception& e) {
        out.error = e.what();
      }
    }
  };

  const int width = std::min<std::size_t>(parallelism, std::max<std::size_t>(num_tasks, 1));
  std::vector<std::thread> threads;
  for (int i = 1; i < width; ++i) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  SuiteReport report;
  report.name = suite.name;
  for (std::size_t vi = 0; vi < suite.variants.size(); ++vi) {
    SuiteRow row;
    row.variant = suite.variants[vi].variant;
    row.policy = suite.variants[vi].policy;
    std::vector<double> means;
    double ul = 0.0, dl = 0.0;
    for (std::size_t si = 0; si < suite.seeds.size(); ++si) {
      const Outcome& out = outcomes[vi * suite.seeds.size() + si];
      if (!out.ok) {
        row.failed = true;
        if (row.error.empty()) row.error = out.error;
        continue;
      }
      means.push_back(out.mean_bps);
      ul += out.ul_bps;
      dl += out.dl_bps;
      row.flows_completed += out.completed;
    }
    row.num_seeds = static_cast<int>(means.size());
    if (!means.empty()) {
      double sum = 0.0;
      for (double m : means) sum += m;
      row.mean_throughput_bps = sum / means.size();
      row.mean_ul_bps = ul / means.size();
      row.mean_dl_bps = dl / means.size();
      if (means.size() > 1) {
        double ss = 0.0;
        for (double m : means) {
          const double d = m - row.mean_throughput_bps;
          ss += d * d;
        }
        const double sd = std::sqrt(ss / (means.size() - 1));
        row.ci95_bps = student_t95(static_cast<int>(means.size()) - 1) * sd /
                       std::sqrt(static_cast<double>(means.size()));
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

double student_t95(int df) {
  static const double table[] = {
      12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
      2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
      2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
  if (df < 1) throw ContractViolation("t quantile: df must be >= 1");
  if (df <= 30) return table[df - 1];
  return 1.96;
}

void write_suite_summary(const SuiteReport& report, std::ostream& out) {
  out << "variant,policy,seeds,mean_throughput_bps,ci95_bps,mean_ul_bps,"
         "mean_dl_bps,flows_completed,status\n";
  for (const SuiteRow& row : report.rows) {
    std::string status = row.failed ? "failed: " + row.error : "ok";
    std::replace(status.begin(), status.end(), ',', ';');
    std::replace(status.begin(), status.end(), '\n', ' ');
    out << row.variant << "," << row.policy << "," << row.num_seeds << ","
        << fmt(row.mean_throughput_bps) << "," << fmt(row.ci95_bps) << ","
        << fmt(row.mean_ul_bps) << "," << fmt(row.mean_dl_bps) << ","
        << row.flows_completed << "," << status << "\n";
  }
}

void emit_traces(const MetricsReport& report, const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir);
  const int wf = report.config.wf();
  for (int b = 0; b < report.config.num_scbs; ++b) {
    const std::string path = out_dir + "/strategy_cell" + std::to_string(b) + ".csv";
    std::ofstream out(path);
    if (!out) throw IoError("cannot write trace file: " + path);
    out << "frame";
    for (int a = 1; a <= wf; ++a) out << ",p_" << a;
    out << "\n";
    for (const FrameTrace& ft : report.traces) {
      out << ft.frame;
      for (double p : ft.cells[b].strategy) out << "," << fmt(p);
      out << "\n";
    }
    if (!out) throw IoError("failed while writing trace file: " + path);
  }
}

}  // namespace dyntdd
