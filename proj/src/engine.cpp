#include "dyntdd/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "dyntdd/errors.hpp"
#include "dyntdd/learner.hpp"

namespace dyntdd {

namespace {

const char* policy_to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Learner: return "learner";
    case PolicyKind::Fixed: return "fixed";
    case PolicyKind::Random: return "random";
    case PolicyKind::Scripted: return "scripted";
  }
  return "?";
}

PolicyKind policy_from_string(const std::string& name) {
  if (name == "learner") return PolicyKind::Learner;
  if (name == "fixed") return PolicyKind::Fixed;
  if (name == "random") return PolicyKind::Random;
  throw ConfigError("policy: must be one of learner, fixed, random");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const NetworkTopology& checked(const ScenarioConfig& cfg, const NetworkTopology& topo) {
  cfg.validate();
  validate_topology(topo);
  return topo;
}

}  // namespace

ThroughputStats packet_throughput(std::span<const FlowRecord> flows) {
  ThroughputStats stats;
  std::vector<double> values;
  double sum = 0.0, sum_ul = 0.0, sum_dl = 0.0;
  for (const FlowRecord& f : flows) {
    if (!f.completed()) continue;
    const double tput = f.throughput_bps();
    values.push_back(tput);
    sum += tput;
    if (f.direction == Link::UL) {
      sum_ul += tput;
      ++stats.count_ul;
    } else {
      sum_dl += tput;
      ++stats.count_dl;
    }
  }
  stats.count = static_cast<long>(values.size());
  if (stats.count == 0) return stats;  // empty marker: count stays 0
  stats.mean_bps = sum / stats.count;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  stats.median_bps = values.size() % 2 == 1
                         ? values[mid]
                         : 0.5 * (values[mid - 1] + values[mid]);
  if (stats.count_ul > 0) stats.mean_ul_bps = sum_ul / stats.count_ul;
  if (stats.count_dl > 0) stats.mean_dl_bps = sum_dl / stats.count_dl;
  return stats;
}

Engine::Engine(ScenarioConfig cfg)
    : Engine(cfg, generate_topology(cfg.num_scbs, cfg.area_side_m, cfg.cell_radius_m,
                                    cfg.ues_per_cell, cfg.seed)) {}

Engine::Engine(ScenarioConfig cfg, NetworkTopology topo)
    : cfg_(std::move(cfg)),
      wf_(cfg_.wf()),
      topo_(std::move(topo)),
      gains_(checked(cfg_, topo_), cfg_.power) {
  if (topo_.num_cells() != cfg_.num_scbs)
    throw ConfigError("topology: cell count does not match num_scbs");
  for (int b = 0; b < topo_.num_cells(); ++b) {
    if (topo_.ues_in(b) != cfg_.ues_per_cell)
      throw ConfigError("topology: UE count does not match ues_per_cell");
  }
  if (topo_.cell_radius_m != cfg_.cell_radius_m ||
      topo_.area_side_m != cfg_.area_side_m)
    throw ConfigError("topology: geometry does not match the configuration");

  cells_.reserve(cfg_.num_scbs);
  for (int b = 0; b < cfg_.num_scbs; ++b) {
    CellState cell{
        .policy = {},
        .learner = make_learner(wf_, cfg_.cell_beta(b)),
        .action_rng = RandomStream::derive(cfg_.seed, "action", b),
        .interferer_rng = RandomStream::derive(cfg_.seed, "interference", b),
    };
    cell.policy.kind = policy_from_string(cfg_.cell_policy_name(b));
    cell.policy.fixed_switching_point = cfg_.fixed_switching_point;

    if (cfg_.offered_load_bps > 0.0) {
      const TrafficProfile profile = profile_from_ratio(
          cfg_.offered_load_bps, cfg_.cell_ratio_db(b), cfg_.mean_file_size_bits);
      cell.offered_bps[0] = profile.offered_ul_bps();
      cell.offered_bps[1] = profile.offered_dl_bps();
      if (!cfg_.deterministic_traffic) {
        cell.arrivals[0].emplace(Link::UL, profile.lambda_ul, profile.mean_size_ul,
                                 cfg_.ues_per_cell,
                                 traffic_stream(cfg_.seed, b, Link::UL));
        cell.arrivals[1].emplace(Link::DL, profile.lambda_dl, profile.mean_size_dl,
                                 cfg_.ues_per_cell,
                                 traffic_stream(cfg_.seed, b, Link::DL));
      }
    }
    cell.per_ue_offered_bps[0] = cell.offered_bps[0] / cfg_.ues_per_cell;
    cell.per_ue_offered_bps[1] = cell.offered_bps[1] / cfg_.ues_per_cell;
    cell.queues[0].resize(cfg_.ues_per_cell);
    cell.queues[1].resize(cfg_.ues_per_cell);
    cells_.push_back(std::move(cell));
  }

  actions_.assign(cfg_.num_scbs, 1);
  last_costs_.assign(cfg_.num_scbs, 0.0);
  active_.resize(cfg_.num_scbs);
  emitters_.assign(cfg_.num_scbs, kSilent);
  report_.config = cfg_;
}

void Engine::set_policy(int cell, CellPolicy policy) {
  if (cell < 0 || cell >= cfg_.num_scbs)
    throw ContractViolation("set_policy: cell out of range");
  if (policy.kind == PolicyKind::Scripted) {
    if (policy.script.empty())
      throw ContractViolation("set_policy: scripted policy needs a sequence");
    for (int w : policy.script) {
      if (w < 1 || w > wf_)
        throw ContractViolation("set_policy: scripted switching point out of 1..wf");
    }
  }
  if (policy.kind == PolicyKind::Fixed && policy.fixed_switching_point != 0 &&
      (policy.fixed_switching_point < 1 || policy.fixed_switching_point > wf_))
    throw ContractViolation("set_policy: fixed switching point out of 1..wf");
  cells_[cell].policy = std::move(policy);
}

void Engine::inject_flow(int cell, int ue, Link direction, double size_bits,
                         double arrival_s) {
  if (cfg_.deterministic_traffic)
    throw ContractViolation("inject_flow: not available with deterministic traffic");
  if (cell < 0 || cell >= cfg_.num_scbs)
    throw ContractViolation("inject_flow: cell out of range");
  if (ue < 0 || ue >= cfg_.ues_per_cell)
    throw ContractViolation("inject_flow: ue out of range");
  if (!(size_bits > 0.0)) throw ContractViolation("inject_flow: size must be > 0");
  if (arrival_s < subframe_ * cfg_.subframe_duration_s)
    throw ContractViolation("inject_flow: arrival lies in the past");
  FlowRecord rec;
  rec.cell = cell;
  rec.ue = ue;
  rec.direction = direction;
  rec.size_bits = size_bits;
  rec.residual_bits = size_bits;
  rec.arrival_s = arrival_s;
  flows_.push_back(rec);
  cells_[cell].queues[dir_index(direction)][ue].push_back(flows_.size() - 1);
}

const LearnerState& Engine::learner(int cell) const {
  if (cell < 0 || cell >= cfg_.num_scbs)
    throw ContractViolation("learner: cell out of range");
  return cells_[cell].learner;
}

int Engine::pick_action(int cell) {
  CellState& cs = cells_[cell];
  switch (cs.policy.kind) {
    case PolicyKind::Learner:
      return select_action(cs.learner.strategy, cs.action_rng) + 1;
    case PolicyKind::Fixed:
      return cs.policy.fixed_switching_point > 0 ? cs.policy.fixed_switching_point
                                                 : baseline_fixed_switching_point(wf_);
    case PolicyKind::Random:
      return baseline_random_switching_point(wf_, cs.action_rng);
    case PolicyKind::Scripted: {
      const long frame = subframe_ / wf_;
      return cs.policy.script[frame % cs.policy.script.size()];
    }
  }
  throw ContractViolation("pick_action: unknown policy");
}

void Engine::begin_frame() {
  for (int b = 0; b < cfg_.num_scbs; ++b) actions_[b] = pick_action(b);
  dirs_.emplace(actions_, wf_);
  frame_loads_ = CellLoadSnapshot::zeros(cfg_.num_scbs, wf_, actions_, cfg_.rho_max);
}

void Engine::run_subframe() {
  const int j = static_cast<int>(subframe_ % wf_) + 1;
  if (j == 1) begin_frame();
  const double t0 = subframe_ * cfg_.subframe_duration_s;
  const double dt = cfg_.subframe_duration_s;
  const double n0 = dbm_to_mw(cfg_.power.noise_dbm_per_hz);
  const double p_bs = dbm_to_mw(cfg_.power.scbs_power_dbm);
  const double p_ue = dbm_to_mw(cfg_.power.ue_power_dbm);

  // pull every arrival due by the start of this subframe into its queue
  if (!cfg_.deterministic_traffic) {
    for (int b = 0; b < cfg_.num_scbs; ++b) {
      for (int d = 0; d < 2; ++d) {
        auto& gen = cells_[b].arrivals[d];
        if (!gen) continue;
        while (gen->next_time() <= t0) {
          flows_.push_back(gen->pop(b));
          const FlowRecord& f = flows_.back();
          cells_[b].queues[d][f.ue].push_back(flows_.size() - 1);
        }
      }
    }
  }

  // active UEs per cell: one flow per UE and direction is served at a time
  for (int b = 0; b < cfg_.num_scbs; ++b) {
    const Link link = dirs_->direction(b, j);
    const int d = dir_index(link);
    active_[b].clear();
    if (cfg_.deterministic_traffic) {
      if (cells_[b].offered_bps[d] > 0.0) {
        for (int u = 0; u < cfg_.ues_per_cell; ++u) active_[b].push_back(u);
      }
    } else {
      for (int u = 0; u < cfg_.ues_per_cell; ++u) {
        const auto& q = cells_[b].queues[d][u];
        if (!q.empty() && flows_[q.front()].arrival_s <= t0) active_[b].push_back(u);
      }
    }
    // what the cell radiates this subframe, seen by everyone else
    if (active_[b].empty()) {
      emitters_[b] = kSilent;
    } else if (link == Link::UL) {
      emitters_[b] = active_[b][cells_[b].interferer_rng.uniform_int(
          0, static_cast<int>(active_[b].size()) - 1)];
    } else {
      emitters_[b] = 0;
    }
  }

  for (int b = 0; b < cfg_.num_scbs; ++b) {
    const Link link = dirs_->direction(b, j);
    const int d = dir_index(link);
    double density = 0.0;

    if (cfg_.deterministic_traffic) {
      // backlogged mean traffic: every subscriber counts, band split over all
      if (!active_[b].empty()) {
        const int num_ues = cfg_.ues_per_cell;
        const double share = cfg_.power.bandwidth_hz / num_ues;
        const double noise = n0 * share;
        const double per_ue_offered = cells_[b].offered_bps[d] / num_ues;
        for (int u = 0; u < num_ues; ++u) {
          const double signal = link == Link::UL
                                    ? p_ue * gains_.ue_to_scbs(b, u, b)
                                    : p_bs * gains_.scbs_to_ue(b, b, u);
          double interference = 0.0;
          for (int k = 0; k < cfg_.num_scbs; ++k) {
            if (k == b) continue;
            const Link other = dirs_->direction(k, j);
            if (!(cells_[k].offered_bps[dir_index(other)] > 0.0)) continue;
            if (other == Link::UL) {
              interference += link == Link::UL
                                  ? gains_.mean_ue_emission_to_scbs(k, b)
                                  : gains_.mean_ue_emission_to_ue(k, b, u);
            } else {
              interference += p_bs * (link == Link::UL
                                          ? gains_.scbs_to_scbs(k, b)
                                          : gains_.scbs_to_ue(k, b, u));
            }
          }
          const double rate =
              rate_bps(share, sinr_from_powers(signal, interference, noise));
          density += system_load_density(per_ue_offered, rate);
        }
      }
    } else if (!active_[b].empty()) {
      const double share =
          cfg_.power.bandwidth_hz / static_cast<double>(active_[b].size());
      for (int u : active_[b]) {
        const double sinr =
            link == Link::UL
                ? sinr_ul(b, u, j, *dirs_, topo_, cfg_.power, emitters_, share, gains_)
                : sinr_dl(b, u, j, *dirs_, topo_, cfg_.power, emitters_, share, gains_);
        const double rate = rate_bps(share, sinr);
        density += system_load_density(cells_[b].per_ue_offered_bps[d], rate);

        auto& queue = cells_[b].queues[d][u];
        FlowRecord& flow = flows_[queue.front()];
        const double budget = rate * dt;
        if (flow.residual_bits <= budget) {
          flow.completion_s = t0 + flow.residual_bits / rate;
          flow.served_bits += flow.residual_bits;
          flow.residual_bits = 0.0;
          queue.pop_front();
        } else {
          flow.residual_bits -= budget;
          flow.served_bits += budget;
        }
      }
    }

    frame_loads_.at(b, j).raw = density / duty_cycle(actions_[b], wf_, link);
    if (cfg_.trace_loads) {
      report_.load_trace.push_back({subframe_ / wf_ + 1, b, j, link,
                                    frame_loads_.at(b, j).raw,
                                    frame_loads_.clamped(b, j)});
    }
  }

  ++subframe_;
  if (j == wf_) end_frame();
}

void Engine::end_frame() {
  const long frame = subframe_ / wf_;  // 1-based: this frame just ended
  double global = 0.0;
  for (int b = 0; b < cfg_.num_scbs; ++b) {
    last_costs_[b] = per_cell_cost(b, actions_, frame_loads_);
    global += last_costs_[b];
  }
  report_.frame_costs.push_back(global);

  FrameTrace trace;
  trace.frame = frame;
  trace.global_cost = global;
  trace.cells.resize(cfg_.num_scbs);
  for (int b = 0; b < cfg_.num_scbs; ++b) {
    CellState& cell = cells_[b];
    if (cell.policy.kind == PolicyKind::Learner && !cell.learner.frozen) {
      const LearningRates rates =
          learning_rates(cell.learner.iteration + 1, cfg_.learning.rates);
      // the strategy step reads the estimates as they were before this
      // frame's cost update (both updates reference the previous frame)
      update_strategy(cell.learner, rates.zeta);
      update_cost_estimate(cell.learner, actions_[b] - 1, last_costs_[b], rates.alpha);
      ++cell.learner.iteration;
      if (cell.learner.iteration >= cfg_.learning.max_learning_frames)
        cell.learner.frozen = true;
    }

    CellFrameTrace& ct = trace.cells[b];
    ct.action = actions_[b];
    ct.observed_cost = last_costs_[b];
    if (cell.policy.kind == PolicyKind::Learner) {
      ct.strategy = cell.learner.strategy;
      ct.estimates = cell.learner.cost_estimates;
    } else {
      ct.strategy.assign(wf_, 0.0);
      ct.estimates.assign(wf_, 0.0);
      if (cell.policy.kind == PolicyKind::Random) {
        ct.strategy.assign(wf_, 1.0 / wf_);
      } else {
        ct.strategy[actions_[b] - 1] = 1.0;
      }
    }
  }
  report_.traces.push_back(std::move(trace));
}

void Engine::run_frame() {
  if (subframe_ % wf_ != 0)
    throw ContractViolation("run_frame: engine is mid-frame");
  for (int j = 0; j < wf_; ++j) run_subframe();
}

MetricsReport Engine::run() {
  while (subframe_ < cfg_.sim_subframes) run_subframe();
  return finish();
}

MetricsReport Engine::finish() {
  report_.flows_created = static_cast<long>(flows_.size());
  report_.flows_completed = 0;
  std::vector<FlowRecord> counted;
  const double freeze_time =
      cfg_.learning.max_learning_frames * static_cast<double>(wf_) *
      cfg_.subframe_duration_s;
  for (const FlowRecord& f : flows_) {
    if (!f.completed()) continue;
    ++report_.flows_completed;
    if (cfg_.collect_after_freeze_only && f.completion_s < freeze_time) continue;
    counted.push_back(f);
  }
  report_.flows_unfinished = report_.flows_created - report_.flows_completed;
  report_.throughput = packet_throughput(counted);
  return report_;
}

MetricsReport run_simulation(const ScenarioConfig& cfg) {
  Engine engine(cfg);
  return engine.run();
}

void MetricsReport::write_summary(std::ostream& out) const {
  out << "format dyntdd-run-summary-1\n";
  out << "frames " << frame_costs.size() << "\n";
  out << "flows_created " << flows_created << "\n";
  out << "flows_completed " << flows_completed << "\n";
  out << "flows_unfinished " << flows_unfinished << "\n";
  if (throughput.count == 0) {
    out << "throughput empty\n";
  } else {
    out << "throughput_count " << throughput.count << "\n";
    out << "mean_throughput_bps " << fmt(throughput.mean_bps) << "\n";
    out << "median_throughput_bps " << fmt(throughput.median_bps) << "\n";
    out << "ul_count " << throughput.count_ul << "\n";
    out << "mean_ul_throughput_bps " << fmt(throughput.mean_ul_bps) << "\n";
    out << "dl_count " << throughput.count_dl << "\n";
    out << "mean_dl_throughput_bps " << fmt(throughput.mean_dl_bps) << "\n";
  }
  double cost_sum = 0.0;
  for (double c : frame_costs) cost_sum += c;
  out << "mean_frame_cost "
      << fmt(frame_costs.empty() ? 0.0 : cost_sum / frame_costs.size()) << "\n";
  out << "config_begin\n";
  emit_config(config, out);
  out << "config_end\n";
}

void MetricsReport::write_frame_trace_csv(std::ostream& out) const {
  const int wf = config.wf();
  out << "frame,cell,action,observed_cost";
  for (int a = 1; a <= wf; ++a) out << ",pi_" << a;
  for (int a = 1; a <= wf; ++a) out << ",jhat_" << a;
  out << "\n";
  for (const FrameTrace& ft : traces) {
    for (int b = 0; b < static_cast<int>(ft.cells.size()); ++b) {
      const CellFrameTrace& ct = ft.cells[b];
      out << ft.frame << "," << b << "," << ct.action << ","
          << fmt(ct.observed_cost);
      for (double p : ct.strategy) out << "," << fmt(p);
      for (double e : ct.estimates) out << "," << fmt(e);
      out << "\n";
    }
  }
}

void MetricsReport::write_cost_trace_csv(std::ostream& out) const {
  out << "frame,global_cost\n";
  for (std::size_t i = 0; i < frame_costs.size(); ++i) {
    out << (i + 1) << "," << fmt(frame_costs[i]) << "\n";
  }
}

void MetricsReport::write_load_trace_csv(std::ostream& out) const {
  out << "frame,cell,subframe,link,load_raw,load_clamped\n";
  for (const LoadTraceRow& row : load_trace) {
    out << row.frame << "," << row.cell << "," << row.subframe << ","
        << to_string(row.link) << "," << fmt(row.raw) << "," << fmt(row.clamped)
        << "\n";
  }
}

}  // namespace dyntdd
