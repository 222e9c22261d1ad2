#pragma once

// Scenario configuration: the full parameter set of one simulation run, its
// validation, and the flat key = value text format it is read from and
// written to. Omitted keys take the defaults below; parse(emit(cfg))
// reproduces cfg exactly.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dyntdd/learner.hpp"
#include "dyntdd/topology.hpp"

namespace dyntdd {

struct LearningConfig {
  double one_over_beta = 0.005;
  RateSchedule rates{};
  int max_learning_frames = 200;

  bool operator==(const LearningConfig&) const = default;
};

inline bool operator==(const RateSchedule& a, const RateSchedule& b) {
  return a.alpha_exponent == b.alpha_exponent && a.zeta_exponent == b.zeta_exponent;
}

inline bool operator==(const PowerConfig& a, const PowerConfig& b) {
  return a.scbs_power_dbm == b.scbs_power_dbm && a.ue_power_dbm == b.ue_power_dbm &&
         a.noise_dbm_per_hz == b.noise_dbm_per_hz &&
         a.penetration_loss_db == b.penetration_loss_db &&
         a.bandwidth_hz == b.bandwidth_hz;
}

struct ScenarioConfig {
  // deployment
  int num_scbs = 4;
  int ues_per_cell = 20;
  double area_side_m = 200.0;
  double cell_radius_m = 40.0;

  // radio
  PowerConfig power{};

  // frame
  int num_subframes = 6;  // wf = num_subframes - 1 switching points
  double subframe_duration_s = 1e-3;

  // traffic: offered_load_bps is per cell, uplink + downlink together
  double offered_load_bps = 12e6;
  double mean_file_size_bits = 5e5;
  double ratio_db = 0.0;
  std::vector<double> cell_ratios_db;  // optional per-cell override
  bool deterministic_traffic = false;

  // policies: learner | fixed | random
  std::string policy = "learner";
  std::vector<std::string> cell_policies;  // optional per-cell override
  int fixed_switching_point = 0;           // 0 = nearest to half the frame

  // learning
  LearningConfig learning{};
  std::vector<double> cell_one_over_beta;  // optional per-cell override

  // run
  long sim_subframes = 20000;
  std::uint64_t seed = 1;
  bool collect_after_freeze_only = false;
  bool trace_loads = false;
  double rho_max = 0.99;

  int wf() const { return num_subframes - 1; }
  long num_frames() const { return sim_subframes / wf(); }
  double cell_ratio_db(int cell) const;
  double cell_beta(int cell) const;
  std::string cell_policy_name(int cell) const;

  // Throws ConfigError naming the offending field and its constraint.
  void validate() const;

  bool operator==(const ScenarioConfig&) const = default;
};

ScenarioConfig parse_config(std::istream& in);
ScenarioConfig parse_config_file(const std::string& path);
void emit_config(const ScenarioConfig& cfg, std::ostream& out);
std::string emit_config(const ScenarioConfig& cfg);

}  // namespace dyntdd
