#pragma once

// Flow-delay costs over a load snapshot and the logit-equilibrium deviation
// bound.
//
// A cell's cost is the delay proxy rho/(1 - rho) averaged separately over
// its uplink and downlink subframes; a direction with no subframes
// contributes nothing. The global cost is the sum over cells. A mixed
// strategy profile is an eps-equilibrium with eps = max_b ln(N_b)/beta_b.

#include <span>
#include <vector>

#include "dyntdd/frame.hpp"

namespace dyntdd {

// one switching point per cell
using ActionProfile = std::vector<int>;

double per_cell_cost(int cell, const ActionProfile& profile,
                     const CellLoadSnapshot& loads);

double global_cost(const ActionProfile& profile, const CellLoadSnapshot& loads);

struct FeasibilityReport {
  bool strictly_feasible = false;  // every raw load in (0, 1)
  bool idle_feasible = false;      // every raw load in [0, 1); idle cells pass
};
FeasibilityReport feasibility(const CellLoadSnapshot& loads);

// ln(num_actions) / beta
double epsilon_bound(double beta, int num_actions);

// max over players of their per-player bound
double game_epsilon_bound(std::span<const double> betas, int num_actions);

}  // namespace dyntdd
