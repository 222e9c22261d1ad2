#pragma once

// Pathloss channel model and per-subframe SINR under cross-link
// interference.
//
// Link budget in milliwatts. gain = 10^-((PL_dB(d) + penetration)/10) with
// the pico NLOS pathloss PL_dB(d) = 140.7 + 36.7 log10(d / 1 km); distances
// below 1 m are clamped to 1 m. In a subframe where the cells split into an
// uplink set and a downlink set, a receiver (the base station for uplink,
// the UE for downlink) sees
//
//   sinr = p_tx h(tx, rx) / (N0 f + sum_k p_k h(k, rx))
//
// with one interference term per other cell: an uplink cell interferes
// through one transmitting UE, a downlink cell through its base station.
// Noise is taken over the f Hz allocated to the flow; interferers radiate
// their full transmit power (no power control).

#include <span>
#include <vector>

#include "dyntdd/topology.hpp"

namespace dyntdd {

enum class Link { UL, DL };
const char* to_string(Link link);

double dbm_to_mw(double dbm);
double pathloss_db(double distance_m);
double channel_gain(const Point& tx, const Point& rx, const PowerConfig& cfg);

// sig / (noise + interference); all three in the same linear unit
double sinr_from_powers(double signal_mw, double interference_mw, double noise_mw);

// f * log2(1 + sinr), bits/s
double rate_bps(double bandwidth_share_hz, double sinr);

// Per-cell link direction for each subframe of one frame, induced by the
// switching points: subframes 1..w are uplink, w+1..wf downlink. The uplink
// and downlink cell sets of any subframe partition the cells.
class LinkDirectionMap {
 public:
  LinkDirectionMap(std::vector<int> switching_points, int wf);

  Link direction(int cell, int subframe) const;  // subframe in 1..wf
  std::vector<int> cells_in(Link link, int subframe) const;
  int num_cells() const { return static_cast<int>(w_.size()); }
  int wf() const { return wf_; }
  int switching_point(int cell) const;

 private:
  std::vector<int> w_;
  int wf_;
};

// Precomputed linear gains between every pair of nodes (base stations and
// UEs) of a deployment, plus per-cell mean UE emissions: the expected uplink
// interference power at a receiver when the transmitting UE is drawn
// uniformly from the cell's subscribers.
class GainCache {
 public:
  GainCache(const NetworkTopology& topo, const PowerConfig& cfg);

  double scbs_to_scbs(int a, int b) const { return g_[node_scbs(a) * n_ + node_scbs(b)]; }
  double ue_to_scbs(int cell, int ue, int scbs) const {
    return g_[node_ue(cell, ue) * n_ + node_scbs(scbs)];
  }
  double scbs_to_ue(int scbs, int cell, int ue) const {
    return g_[node_scbs(scbs) * n_ + node_ue(cell, ue)];
  }
  double ue_to_ue(int ca, int ua, int cb, int ub) const {
    return g_[node_ue(ca, ua) * n_ + node_ue(cb, ub)];
  }

  // mean over cell's UEs of (UE power x gain to receiver), in mW
  double mean_ue_emission_to_scbs(int cell, int scbs) const {
    return mean_emission_[cell * n_ + node_scbs(scbs)];
  }
  double mean_ue_emission_to_ue(int cell, int rx_cell, int rx_ue) const {
    return mean_emission_[cell * n_ + node_ue(rx_cell, rx_ue)];
  }

 private:
  int node_scbs(int b) const { return b; }
  int node_ue(int cell, int ue) const { return ue_offset_[cell] + ue; }

  int n_ = 0;
  std::vector<int> ue_offset_;
  std::vector<double> g_;              // n x n linear gains
  std::vector<double> mean_emission_;  // num_cells x n
};

inline constexpr int kSilent = -1;

// emitters[k] tells what cell k radiates this subframe: kSilent for nothing,
// for an uplink cell the index of its transmitting UE, for a downlink cell
// any value >= 0 (the base station transmits). The serving cell's entry is
// ignored. bandwidth_share_hz is the band allocated to this flow; noise is
// taken over it.
double sinr_ul(int serving, int ue, int subframe, const LinkDirectionMap& dirs,
               const NetworkTopology& topo, const PowerConfig& cfg,
               std::span<const int> emitters, double bandwidth_share_hz,
               const GainCache& gains);

double sinr_dl(int serving, int ue, int subframe, const LinkDirectionMap& dirs,
               const NetworkTopology& topo, const PowerConfig& cfg,
               std::span<const int> emitters, double bandwidth_share_hz,
               const GainCache& gains);

}  // namespace dyntdd
