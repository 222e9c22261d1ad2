#include "dyntdd/cost.hpp"

#include <cmath>

#include "dyntdd/errors.hpp"

namespace dyntdd {

double per_cell_cost(int cell, const ActionProfile& profile,
                     const CellLoadSnapshot& loads) {
  if (static_cast<int>(profile.size()) != loads.num_cells)
    throw ContractViolation("cost: profile size must match the cell count");
  if (cell < 0 || cell >= loads.num_cells)
    throw ContractViolation("cost: cell out of range");
  const int wf = loads.wf;
  const int w = profile[cell];
  if (w < 1 || w > wf)
    throw ContractViolation("cost: switching point out of 1..wf");

  double ul = 0.0;
  double dl = 0.0;
  for (int j = 1; j <= wf; ++j) {
    const auto& entry = loads.at(cell, j);
    const Link expected = j <= w ? Link::UL : Link::DL;
    if (entry.link != expected)
      throw ContractViolation("cost: loads were not computed under this profile");
    const double rho = loads.clamped(cell, j);
    const double term = rho / (1.0 - rho);
    if (expected == Link::UL)
      ul += term;
    else
      dl += term;
  }
  // each direction contributes the average delay over its own subframes;
  // an all-uplink frame simply has no downlink term
  double cost = ul / w;
  if (w < wf) cost += dl / (wf - w);
  return cost;
}

double global_cost(const ActionProfile& profile, const CellLoadSnapshot& loads) {
  double sum = 0.0;
  for (int b = 0; b < loads.num_cells; ++b) sum += per_cell_cost(b, profile, loads);
  return sum;
}

FeasibilityReport feasibility(const CellLoadSnapshot& loads) {
  FeasibilityReport rep{true, true};
  for (const auto& entry : loads.entries) {
    if (!(entry.raw < 1.0)) {
      rep.strictly_feasible = false;
      rep.idle_feasible = false;
    } else if (!(entry.raw > 0.0)) {
      rep.strictly_feasible = false;
    }
  }
  return rep;
}

double epsilon_bound(double beta, int num_actions) {
  if (!(beta > 0.0)) throw ContractViolation("epsilon bound: beta must be > 0");
  if (num_actions < 1)
    throw ContractViolation("epsilon bound: need at least one action");
  return std::log(static_cast<double>(num_actions)) / beta;
}

double game_epsilon_bound(std::span<const double> betas, int num_actions) {
  if (betas.empty()) throw ContractViolation("epsilon bound: no players");
  double eps = 0.0;
  for (double beta : betas) eps = std::max(eps, epsilon_bound(beta, num_actions));
  return eps;
}

}  // namespace dyntdd
