#include "dyntdd/channel.hpp"

#include <algorithm>
#include <cmath>

#include "dyntdd/errors.hpp"

namespace dyntdd {

const char* to_string(Link link) { return link == Link::UL ? "UL" : "DL"; }

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double pathloss_db(double distance_m) {
  const double d = std::max(distance_m, 1.0);  // clamp out the singularity
  return 140.7 + 36.7 * std::log10(d / 1000.0);
}

double channel_gain(const Point& tx, const Point& rx, const PowerConfig& cfg) {
  const double loss_db = pathloss_db(distance(tx, rx)) + cfg.penetration_loss_db;
  return std::pow(10.0, -loss_db / 10.0);
}

double sinr_from_powers(double signal_mw, double interference_mw, double noise_mw) {
  if (!(noise_mw > 0.0)) throw ContractViolation("sinr: noise power must be > 0");
  return signal_mw / (noise_mw + interference_mw);
}

double rate_bps(double bandwidth_share_hz, double sinr) {
  if (!(bandwidth_share_hz > 0.0))
    throw ContractViolation("rate: bandwidth share must be > 0");
  if (sinr < 0.0) throw ContractViolation("rate: sinr must be >= 0");
  return bandwidth_share_hz * std::log2(1.0 + sinr);
}

LinkDirectionMap::LinkDirectionMap(std::vector<int> switching_points, int wf)
    : w_(std::move(switching_points)), wf_(wf) {
  if (wf_ < 1) throw ContractViolation("direction map: wf must be >= 1");
  for (int w : w_) {
    if (w < 1 || w > wf_)
      throw ContractViolation("direction map: switching point out of 1..wf");
  }
}

Link LinkDirectionMap::direction(int cell, int subframe) const {
  if (cell < 0 || cell >= num_cells())
    throw ContractViolation("direction map: cell out of range");
  if (subframe < 1 || subframe > wf_)
    throw ContractViolation("direction map: subframe out of 1..wf");
  return subframe <= w_[cell] ? Link::UL : Link::DL;
}

std::vector<int> LinkDirectionMap::cells_in(Link link, int subframe) const {
  std::vector<int> out;
  for (int b = 0; b < num_cells(); ++b) {
    if (direction(b, subframe) == link) out.push_back(b);
  }
  return out;
}

int LinkDirectionMap::switching_point(int cell) const {
  if (cell < 0 || cell >= num_cells())
    throw ContractViolation("direction map: cell out of range");
  return w_[cell];
}

GainCache::GainCache(const NetworkTopology& topo, const PowerConfig& cfg) {
  const int cells = topo.num_cells();
  ue_offset_.resize(cells);
  int n = cells;
  for (int b = 0; b < cells; ++b) {
    ue_offset_[b] = n;
    n += topo.ues_in(b);
  }
  n_ = n;

  std::vector<Point> pos(n);
  for (int b = 0; b < cells; ++b) pos[b] = topo.scbs[b];
  for (int b = 0; b < cells; ++b) {
    for (int k = 0; k < topo.ues_in(b); ++k) pos[ue_offset_[b] + k] = topo.ues[b][k];
  }

  g_.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g_[static_cast<std::size_t>(i) * n + j] = channel_gain(pos[i], pos[j], cfg);
    }
  }

  const double p_ue = dbm_to_mw(cfg.ue_power_dbm);
  mean_emission_.assign(static_cast<std::size_t>(cells) * n, 0.0);
  for (int b = 0; b < cells; ++b) {
    const int k_b = topo.ues_in(b);
    for (int rx = 0; rx < n; ++rx) {
      double acc = 0.0;
      for (int k = 0; k < k_b; ++k) {
        acc += p_ue * g_[static_cast<std::size_t>(ue_offset_[b] + k) * n + rx];
      }
      mean_emission_[static_cast<std::size_t>(b) * n + rx] = k_b > 0 ? acc / k_b : 0.0;
    }
  }
}

namespace {

// Total interference power at a node from every cell except `serving`.
// rx_is_scbs selects the receiver node kind; rx identifies it.
double interference_at(int serving, bool rx_is_scbs, int rx_cell, int rx_ue,
                       int subframe, const LinkDirectionMap& dirs,
                       const PowerConfig& cfg, std::span<const int> emitters,
                       const GainCache& gains) {
  if (static_cast<int>(emitters.size()) != dirs.num_cells())
    throw ContractViolation("sinr: emitters size must match the cell count");
  const double p_ue = dbm_to_mw(cfg.ue_power_dbm);
  const double p_bs = dbm_to_mw(cfg.scbs_power_dbm);
  double acc = 0.0;
  for (int k = 0; k < dirs.num_cells(); ++k) {
    if (k == serving || emitters[k] == kSilent) continue;
    if (dirs.direction(k, subframe) == Link::UL) {
      const int tx_ue = emitters[k];
      acc += p_ue * (rx_is_scbs ? gains.ue_to_scbs(k, tx_ue, rx_cell)
                                : gains.ue_to_ue(k, tx_ue, rx_cell, rx_ue));
    } else {
      acc += p_bs * (rx_is_scbs ? gains.scbs_to_scbs(k, rx_cell)
                                : gains.scbs_to_ue(k, rx_cell, rx_ue));
    }
  }
  return acc;
}

}  // namespace

double sinr_ul(int serving, int ue, int subframe, const LinkDirectionMap& dirs,
               const NetworkTopology& topo, const PowerConfig& cfg,
               std::span<const int> emitters, double bandwidth_share_hz,
               const GainCache& gains) {
  if (dirs.direction(serving, subframe) != Link::UL)
    throw ContractViolation("sinr_ul: serving cell is not in uplink in this subframe");
  if (ue < 0 || ue >= topo.ues_in(serving))
    throw ContractViolation("sinr_ul: ue out of range");
  const double signal = dbm_to_mw(cfg.ue_power_dbm) * gains.ue_to_scbs(serving, ue, serving);
  const double noise = dbm_to_mw(cfg.noise_dbm_per_hz) * bandwidth_share_hz;
  const double interf = interference_at(serving, /*rx_is_scbs=*/true, serving, 0,
                                        subframe, dirs, cfg, emitters, gains);
  return sinr_from_powers(signal, interf, noise);
}

double sinr_dl(int serving, int ue, int subframe, const LinkDirectionMap& dirs,
               const NetworkTopology& topo, const PowerConfig& cfg,
               std::span<const int> emitters, double bandwidth_share_hz,
               const GainCache& gains) {
  if (dirs.direction(serving, subframe) != Link::DL)
    throw ContractViolation("sinr_dl: serving cell is not in downlink in this subframe");
  if (ue < 0 || ue >= topo.ues_in(serving))
    throw ContractViolation("sinr_dl: ue out of range");
  const double signal = dbm_to_mw(cfg.scbs_power_dbm) * gains.scbs_to_ue(serving, serving, ue);
  const double noise = dbm_to_mw(cfg.noise_dbm_per_hz) * bandwidth_share_hz;
  const double interf = interference_at(serving, /*rx_is_scbs=*/false, serving, ue,
                                        subframe, dirs, cfg, emitters, gains);
  return sinr_from_powers(signal, interf, noise);
}

}  // namespace dyntdd
