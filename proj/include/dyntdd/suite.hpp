#pragma once

// Named experiment suites: scenario grids run across replication seeds on a
// bounded worker pool, aggregated into one throughput row per
// (variant, policy).

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "dyntdd/engine.hpp"

namespace dyntdd {

struct SuiteVariant {
  std::string variant;  // e.g. "ratio_-20dB"
  std::string policy;   // learner | fixed | random
  ScenarioConfig config;
};

struct ExperimentSuite {
  std::string name;
  std::vector<SuiteVariant> variants;
  std::vector<std::uint64_t> seeds;
};

std::vector<std::string> builtin_suite_names();

// Builds one of the built-in suites from a base scenario:
//   fig3-ratio-sweep      ratios -20..20 dB, every cell alike, 3 policies
//   fig4-opposite-ratios  half the cells +R, half -R, R in {10, 20}
//   fig5-cell-count       2..10 cells at 10 dB
//   fig56-convergence     2 learner cells at +20/-20 dB, learning phase only
ExperimentSuite make_suite(const std::string& name, const ScenarioConfig& base,
                           std::vector<std::uint64_t> seeds);

struct SuiteRow {
  std::string variant;
  std::string policy;
  int num_seeds = 0;
  double mean_throughput_bps = 0.0;  // mean over seeds of per-run mean
  double ci95_bps = 0.0;             // Student-t 95% half-width over seeds
  double mean_ul_bps = 0.0;
  double mean_dl_bps = 0.0;
  long flows_completed = 0;
  bool failed = false;
  std::string error;
};

struct SuiteReport {
  std::string name;
  std::vector<SuiteRow> rows;
};

// Runs every (variant, seed) on up to `parallelism` worker threads. A failed
// variant is recorded in its row and the suite continues. `on_run`, when
// set, receives each finished run (serialized by a mutex, order arbitrary);
// rows are aggregated in variant order regardless of scheduling.
SuiteReport run_suite(
    const ExperimentSuite& suite, int parallelism,
    const std::function<void(const SuiteVariant&, std::uint64_t seed,
                             const MetricsReport&)>& on_run = {});

void write_suite_summary(const SuiteReport& report, std::ostream& out);

// One strategy-evolution file per cell, wide format: frame followed by one
// probability column per switching point. Plot-ready.
void emit_traces(const MetricsReport& report, const std::string& out_dir);

double student_t95(int df);

}  // namespace dyntdd
