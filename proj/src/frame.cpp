#include "dyntdd/frame.hpp"

#include <algorithm>
#include <limits>

#include "dyntdd/errors.hpp"

namespace dyntdd {

int FrameSchedule::switching_point(int cell) const {
  if (cell < 0 || cell >= static_cast<int>(switching_points.size()))
    throw ContractViolation("schedule: cell out of range");
  return switching_points[cell];
}

LinkDirectionMap FrameSchedule::directions() const {
  return LinkDirectionMap(switching_points, wf());
}

void FrameSchedule::validate() const {
  if (num_subframes < 2)
    throw ContractViolation("schedule: frame needs at least 2 subframes");
  if (!(subframe_duration_s > 0.0))
    throw ContractViolation("schedule: subframe duration must be > 0");
  for (int w : switching_points) {
    if (w < 1 || w > wf())
      throw ContractViolation("schedule: switching point out of 1..wf");
  }
}

Link subframe_direction(int w, int subframe, int wf) {
  if (w < 1 || w > wf)
    throw ContractViolation("subframe_direction: switching point out of 1..wf");
  if (subframe < 1 || subframe > wf)
    throw ContractViolation("subframe_direction: subframe out of 1..wf");
  return subframe <= w ? Link::UL : Link::DL;
}

double duty_cycle(int w, int wf, Link link) {
  if (wf < 1) throw ContractViolation("duty_cycle: wf must be >= 1");
  if (w < 1 || w > wf)
    throw ContractViolation("duty_cycle: switching point out of 1..wf");
  return link == Link::UL ? static_cast<double>(w) / wf
                          : static_cast<double>(wf - w) / wf;
}

double system_load_density(double offered_bps, double rate_bps) {
  if (offered_bps < 0.0)
    throw ContractViolation("load density: offered load must be >= 0");
  if (rate_bps < 0.0) throw ContractViolation("load density: rate must be >= 0");
  if (offered_bps == 0.0) return 0.0;
  if (rate_bps == 0.0) return std::numeric_limits<double>::infinity();
  return offered_bps / rate_bps;
}

double clamp_load(double raw, double rho_max) {
  return std::min(std::max(raw, 0.0), rho_max);
}

double cell_load(int cell, int subframe, Link link, const FrameSchedule& schedule,
                 std::span<const double> ue_densities, double rho_max) {
  if (subframe_direction(schedule.switching_point(cell), subframe, schedule.wf()) !=
      link) {
    throw ContractViolation("cell_load: subframe direction does not match link");
  }
  double sum = 0.0;
  for (double d : ue_densities) sum += d;
  const double duty = duty_cycle(schedule.switching_point(cell), schedule.wf(), link);
  return clamp_load(sum / duty, rho_max);
}

CellLoadSnapshot CellLoadSnapshot::zeros(int num_cells, int wf,
                                         std::span<const int> switching_points,
                                         double rho_max) {
  if (static_cast<int>(switching_points.size()) != num_cells)
    throw ContractViolation("load snapshot: switching points must match cell count");
  CellLoadSnapshot snap;
  snap.num_cells = num_cells;
  snap.wf = wf;
  snap.rho_max = rho_max;
  snap.entries.resize(static_cast<std::size_t>(num_cells) * wf);
  for (int b = 0; b < num_cells; ++b) {
    for (int j = 1; j <= wf; ++j) {
      snap.at(b, j).link = subframe_direction(switching_points[b], j, wf);
    }
  }
  return snap;
}

const CellLoadSnapshot::Entry& CellLoadSnapshot::at(int cell, int subframe) const {
  if (cell < 0 || cell >= num_cells || subframe < 1 || subframe > wf)
    throw ContractViolation("load snapshot: index out of range");
  return entries[static_cast<std::size_t>(cell) * wf + subframe - 1];
}

CellLoadSnapshot::Entry& CellLoadSnapshot::at(int cell, int subframe) {
  if (cell < 0 || cell >= num_cells || subframe < 1 || subframe > wf)
    throw ContractViolation("load snapshot: index out of range");
  return entries[static_cast<std::size_t>(cell) * wf + subframe - 1];
}

double CellLoadSnapshot::clamped(int cell, int subframe) const {
  return clamp_load(at(cell, subframe).raw, rho_max);
}

}  // namespace dyntdd
