#include "dyntdd/game_oracle.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "dyntdd/errors.hpp"

namespace dyntdd {

CostTensor::CostTensor(int num_players, int num_actions)
    : players_(num_players), actions_(num_actions) {
  if (players_ < 1 || actions_ < 1)
    throw ContractViolation("cost tensor: players and actions must be >= 1");
  std::size_t profiles = 1;
  for (int p = 0; p < players_; ++p) profiles *= static_cast<std::size_t>(actions_);
  costs_.assign(profiles * players_, 0.0);
}

std::size_t CostTensor::num_profiles() const { return costs_.size() / players_; }

std::size_t CostTensor::index(std::span<const int> profile) const {
  if (static_cast<int>(profile.size()) != players_)
    throw ContractViolation("cost tensor: profile size must match player count");
  std::size_t idx = 0;
  std::size_t stride = 1;
  for (int p = 0; p < players_; ++p) {
    const int a = profile[p];
    if (a < 1 || a > actions_)
      throw ContractViolation("cost tensor: action out of 1..num_actions");
    idx += static_cast<std::size_t>(a - 1) * stride;
    stride *= static_cast<std::size_t>(actions_);
  }
  return idx;
}

double CostTensor::cost(std::span<const int> profile, int player) const {
  if (player < 0 || player >= players_)
    throw ContractViolation("cost tensor: player out of range");
  return costs_[index(profile) * players_ + player];
}

double& CostTensor::cost(std::span<const int> profile, int player) {
  if (player < 0 || player >= players_)
    throw ContractViolation("cost tensor: player out of range");
  return costs_[index(profile) * players_ + player];
}

CellLoadSnapshot mean_traffic_loads(const ActionProfile& profile,
                                    const OracleScenario& scenario,
                                    const GainCache& gains) {
  const NetworkTopology& topo = scenario.topology;
  const int cells = topo.num_cells();
  const int wf = scenario.wf;
  if (static_cast<int>(profile.size()) != cells)
    throw ContractViolation("mean loads: profile size must match cell count");
  if (static_cast<int>(scenario.offered_bps.size()) != cells)
    throw ContractViolation("mean loads: offered loads must match cell count");

  const LinkDirectionMap dirs(profile, wf);
  CellLoadSnapshot snap = CellLoadSnapshot::zeros(cells, wf, profile, scenario.rho_max);

  const double p_bs = dbm_to_mw(scenario.power.scbs_power_dbm);
  const double p_ue = dbm_to_mw(scenario.power.ue_power_dbm);
  const double n0 = dbm_to_mw(scenario.power.noise_dbm_per_hz);

  for (int j = 1; j <= wf; ++j) {
    for (int b = 0; b < cells; ++b) {
      const Link link = dirs.direction(b, j);
      const int dir = link == Link::UL ? 0 : 1;
      const int num_ues = topo.ues_in(b);
      const double share = scenario.power.bandwidth_hz / num_ues;
      const double noise = n0 * share;
      const double per_ue_offered = scenario.offered_bps[b][dir] / num_ues;

      double density = 0.0;
      for (int u = 0; u < num_ues; ++u) {
        double signal, interference = 0.0;
        if (link == Link::UL) {
          signal = p_ue * gains.ue_to_scbs(b, u, b);
        } else {
          signal = p_bs * gains.scbs_to_ue(b, b, u);
        }
        for (int k = 0; k < cells; ++k) {
          if (k == b) continue;
          const Link other = dirs.direction(k, j);
          // a cell with nothing offered in its scheduled direction is silent
          if (!(scenario.offered_bps[k][other == Link::UL ? 0 : 1] > 0.0)) continue;
          if (other == Link::UL) {
            interference += link == Link::UL ? gains.mean_ue_emission_to_scbs(k, b)
                                             : gains.mean_ue_emission_to_ue(k, b, u);
          } else {
            interference += p_bs * (link == Link::UL ? gains.scbs_to_scbs(k, b)
                                                     : gains.scbs_to_ue(k, b, u));
          }
        }
        const double rate = rate_bps(share, sinr_from_powers(signal, interference, noise));
        density += system_load_density(per_ue_offered, rate);
      }
      snap.at(b, j).raw = density / duty_cycle(profile[b], wf, link);
    }
  }
  return snap;
}

CostTensor build_cost_tensor(const OracleScenario& scenario) {
  const int cells = scenario.topology.num_cells();
  if (cells > 4)
    throw ContractViolation("cost tensor: enumeration is gated to <= 4 players");
  if (scenario.wf > 6)
    throw ContractViolation("cost tensor: enumeration is gated to <= 6 actions");
  if (scenario.wf < 1) throw ContractViolation("cost tensor: wf must be >= 1");

  const GainCache gains(scenario.topology, scenario.power);
  CostTensor tensor(cells, scenario.wf);
  tensor.for_each_profile([&](std::span<const int> profile, std::size_t) {
    ActionProfile actions(profile.begin(), profile.end());
    const CellLoadSnapshot loads = mean_traffic_loads(actions, scenario, gains);
    for (int b = 0; b < cells; ++b) {
      tensor.cost(profile, b) = per_cell_cost(b, actions, loads);
    }
  });
  return tensor;
}

std::vector<double> expected_cost(
    const std::vector<std::vector<double>>& strategies, const CostTensor& tensor) {
  if (static_cast<int>(strategies.size()) != tensor.num_players())
    throw ContractViolation("expected cost: one strategy per player required");
  for (const auto& pi : strategies) {
    if (static_cast<int>(pi.size()) != tensor.num_actions())
      throw ContractViolation("expected cost: strategy length must match actions");
    double sum = 0.0;
    for (double p : pi) {
      if (p < 0.0) throw ContractViolation("expected cost: negative probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw ContractViolation("expected cost: strategy must sum to 1 within 1e-12");
  }

  std::vector<double> out(tensor.num_players(), 0.0);
  tensor.for_each_profile([&](std::span<const int> profile, std::size_t) {
    double prob = 1.0;
    for (int p = 0; p < tensor.num_players(); ++p) {
      prob *= strategies[p][profile[p] - 1];
    }
    if (prob == 0.0) return;
    for (int p = 0; p < tensor.num_players(); ++p) {
      out[p] += prob * tensor.cost(profile, p);
    }
  });
  return out;
}

void save_cost_tensor(const CostTensor& tensor, std::ostream& out) {
  out << "# players=" << tensor.num_players() << " actions=" << tensor.num_actions()
      << "\n";
  for (int p = 0; p < tensor.num_players(); ++p) out << "w" << p << ",";
  for (int p = 0; p < tensor.num_players(); ++p) {
    out << "cost" << p << (p + 1 < tensor.num_players() ? "," : "\n");
  }
  char buf[32];
  tensor.for_each_profile([&](std::span<const int> profile, std::size_t) {
    for (int p = 0; p < tensor.num_players(); ++p) out << profile[p] << ",";
    for (int p = 0; p < tensor.num_players(); ++p) {
      std::snprintf(buf, sizeof buf, "%.17g", tensor.cost(profile, p));
      out << buf << (p + 1 < tensor.num_players() ? "," : "\n");
    }
  });
}

}  // namespace dyntdd
