#pragma once

// TDD frame bookkeeping: switching points, duty cycles and per-subframe cell
// loads. A frame of num_subframes has wf = num_subframes - 1 switching
// points; the model schedules over the wf subframes the cost function sums
// over, so switching point w gives uplink duty w/wf and downlink duty
// (wf - w)/wf. A cell's load in a subframe is the sum of its served UEs'
// load densities (offered bits/s over achievable rate) divided by the duty
// cycle of that direction.

#include <span>
#include <vector>

#include "dyntdd/channel.hpp"

namespace dyntdd {

struct FrameSchedule {
  int num_subframes = 6;  // frame length; wf = num_subframes - 1
  std::vector<int> switching_points;
  double subframe_duration_s = 1e-3;

  int wf() const { return num_subframes - 1; }
  int switching_point(int cell) const;
  LinkDirectionMap directions() const;
  void validate() const;  // every switching point in 1..wf
};

// UL for subframes 1..w, DL for w+1..wf
Link subframe_direction(int w, int subframe, int wf);

// UL -> w/wf, DL -> (wf - w)/wf; the two sum to 1
double duty_cycle(int w, int wf, Link link);

// offered / rate, dimensionless; +inf when rate is 0 but load is offered
// (saturated; clamped downstream), 0 when nothing is offered
double system_load_density(double offered_bps, double rate_bps);

double clamp_load(double raw, double rho_max);

// Sum of per-UE load densities over the duty cycle, clamped to [0, rho_max].
// The subframe's scheduled direction must match `link`.
double cell_load(int cell, int subframe, Link link, const FrameSchedule& schedule,
                 std::span<const double> ue_densities, double rho_max);

// Per-(cell, subframe) loads of one frame. Raw values are kept unclamped so
// feasibility can be judged; cost evaluation reads the clamped view.
struct CellLoadSnapshot {
  int num_cells = 0;
  int wf = 0;
  double rho_max = 0.99;

  struct Entry {
    Link link = Link::UL;
    double raw = 0.0;
  };
  std::vector<Entry> entries;  // [cell * wf + (subframe - 1)]

  static CellLoadSnapshot zeros(int num_cells, int wf,
                                std::span<const int> switching_points,
                                double rho_max);

  const Entry& at(int cell, int subframe) const;
  Entry& at(int cell, int subframe);
  double clamped(int cell, int subframe) const;
};

}  // namespace dyntdd
