#pragma once

// The per-subframe simulation loop: action selection at frame start, flow
// arrivals, equal band split per cell and direction, SINR/rate/service with
// completion interpolation, realized per-subframe loads, observed costs and
// learner updates at frame end, and metric collection.

#include <deque>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "dyntdd/config.hpp"
#include "dyntdd/cost.hpp"
#include "dyntdd/frame.hpp"
#include "dyntdd/game_oracle.hpp"
#include "dyntdd/traffic.hpp"

namespace dyntdd {

enum class PolicyKind { Learner, Fixed, Random, Scripted };

struct CellPolicy {
  PolicyKind kind = PolicyKind::Learner;
  int fixed_switching_point = 0;  // Fixed: 0 = nearest to half
  std::vector<int> script;        // Scripted: per frame, cycled
};

struct ThroughputStats {
  long count = 0;  // 0 marks "no completed flows", not zero throughput
  double mean_bps = 0.0;
  double median_bps = 0.0;
  long count_ul = 0;
  long count_dl = 0;
  double mean_ul_bps = 0.0;
  double mean_dl_bps = 0.0;
};

// size / sojourn delay of every completed flow
ThroughputStats packet_throughput(std::span<const FlowRecord> flows);

struct CellFrameTrace {
  int action = 0;  // switching point played
  double observed_cost = 0.0;
  std::vector<double> strategy;   // after the frame's update
  std::vector<double> estimates;  // after the frame's update
};

struct FrameTrace {
  long frame = 0;  // 1-based
  double global_cost = 0.0;
  std::vector<CellFrameTrace> cells;
};

struct LoadTraceRow {
  long frame = 0;
  int cell = 0;
  int subframe = 0;
  Link link = Link::UL;
  double raw = 0.0;
  double clamped = 0.0;
};

struct MetricsReport {
  ScenarioConfig config;
  ThroughputStats throughput;
  std::vector<double> frame_costs;  // global cost per frame
  std::vector<FrameTrace> traces;
  std::vector<LoadTraceRow> load_trace;  // only when config.trace_loads
  long flows_created = 0;
  long flows_completed = 0;
  long flows_unfinished = 0;

  void write_summary(std::ostream& out) const;
  void write_frame_trace_csv(std::ostream& out) const;
  void write_cost_trace_csv(std::ostream& out) const;
  void write_load_trace_csv(std::ostream& out) const;
};

class Engine {
 public:
  explicit Engine(ScenarioConfig cfg);
  // Adopts a prebuilt deployment (replay); it must match the config's
  // deployment parameters.
  Engine(ScenarioConfig cfg, NetworkTopology topo);

  // Queues an externally supplied flow (trace replay, tests). Only
  // meaningful with sampled traffic; call before the flow's arrival time is
  // reached.
  void inject_flow(int cell, int ue, Link direction, double size_bits,
                   double arrival_s);

  void run_subframe();
  void run_frame();
  MetricsReport run();      // full horizon + finish
  MetricsReport finish();   // metrics of whatever has been run so far

  long current_subframe() const { return subframe_; }
  long current_frame() const { return subframe_ / wf_; }
  const NetworkTopology& topology() const { return topo_; }
  const LearnerState& learner(int cell) const;
  const std::vector<double>& last_observed_costs() const { return last_costs_; }
  const std::vector<int>& current_actions() const { return actions_; }
  std::span<const FlowRecord> flows() const { return flows_; }

  // Override one cell's policy before running (scripted play, experiments).
  void set_policy(int cell, CellPolicy policy);

 private:
  struct CellState {
    CellPolicy policy;
    LearnerState learner;
    RandomStream action_rng;
    RandomStream interferer_rng;
    std::optional<ArrivalGenerator> arrivals[2];  // [UL, DL]
    std::vector<std::deque<std::size_t>> queues[2];
    double offered_bps[2] = {0.0, 0.0};
    double per_ue_offered_bps[2] = {0.0, 0.0};
  };

  void begin_frame();
  void end_frame();
  int pick_action(int cell);
  static int dir_index(Link l) { return l == Link::UL ? 0 : 1; }

  ScenarioConfig cfg_;
  int wf_;
  NetworkTopology topo_;
  GainCache gains_;
  std::vector<CellState> cells_;
  std::vector<FlowRecord> flows_;

  std::vector<int> actions_;  // switching point per cell, current frame
  std::optional<LinkDirectionMap> dirs_;
  CellLoadSnapshot frame_loads_;
  std::vector<double> last_costs_;
  long subframe_ = 0;

  MetricsReport report_;

  // scratch, reused across subframes
  std::vector<std::vector<int>> active_;
  std::vector<int> emitters_;
};

MetricsReport run_simulation(const ScenarioConfig& cfg);

}  // namespace dyntdd
