#pragma once

// Exact small-instance game: enumerates every joint switching-point profile,
// evaluates each player's cost under deterministic mean traffic, and computes
// expected costs under mixed strategies. This is the brute-force reference
// the learning path is verified against, so instances are gated to sizes
// that enumerate comfortably.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "dyntdd/cost.hpp"
#include "dyntdd/topology.hpp"

namespace dyntdd {

class CostTensor {
 public:
  CostTensor(int num_players, int num_actions);

  int num_players() const { return players_; }
  int num_actions() const { return actions_; }
  std::size_t num_profiles() const;

  // profile entries are switching points in 1..num_actions
  std::size_t index(std::span<const int> profile) const;
  double cost(std::span<const int> profile, int player) const;
  double& cost(std::span<const int> profile, int player);

  // Visits every joint profile in odometer order, first player fastest.
  // fn(profile, flat_index) with profile a span of switching points.
  template <class Fn>
  void for_each_profile(Fn&& fn) const {
    std::vector<int> profile(players_, 1);
    for (std::size_t idx = 0;; ++idx) {
      fn(std::span<const int>(profile), idx);
      int p = 0;
      while (p < players_ && ++profile[p] > actions_) profile[p++] = 1;
      if (p == players_) break;
    }
  }

 private:
  int players_;
  int actions_;
  std::vector<double> costs_;  // [flat_index * players_ + player]
};

struct OracleScenario {
  NetworkTopology topology;
  PowerConfig power;
  int wf = 5;
  std::vector<std::array<double, 2>> offered_bps;  // per cell {UL, DL}
  double rho_max = 0.99;
};

// Loads of one joint profile under deterministic mean traffic: every
// subscriber is backlogged in its cell's scheduled direction, the band is
// split over all of a cell's subscribers, uplink interference is the mean
// over the interfering cell's subscribers, and a cell with nothing offered
// in a direction stays silent there.
CellLoadSnapshot mean_traffic_loads(const ActionProfile& profile,
                                    const OracleScenario& scenario,
                                    const GainCache& gains);

// Gated to <= 4 players and <= 6 actions (<= 1296 profiles).
CostTensor build_cost_tensor(const OracleScenario& scenario);

// Per-player expected cost under independent mixed strategies: the
// probability-weighted sum of per-profile costs. Each strategy must sum to 1
// within 1e-12.
std::vector<double> expected_cost(
    const std::vector<std::vector<double>>& strategies, const CostTensor& tensor);

void save_cost_tensor(const CostTensor& tensor, std::ostream& out);

}  // namespace dyntdd
