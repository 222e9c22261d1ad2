#pragma once

// Random small-cell deployments: base stations dropped uniformly over a
// square area, each serving closed-access subscribers placed uniformly in
// a disk of the cell radius around it.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dyntdd {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point& a, const Point& b);

struct PowerConfig {
  double scbs_power_dbm = 23.0;
  double ue_power_dbm = 23.0;
  double noise_dbm_per_hz = -174.0;
  double penetration_loss_db = 10.0;
  double bandwidth_hz = 10e6;
};

struct NetworkTopology {
  std::vector<Point> scbs;              // one position per cell
  std::vector<std::vector<Point>> ues;  // subscribers per cell
  double cell_radius_m = 40.0;
  double area_side_m = 200.0;
  std::uint64_t seed = 0;

  int num_cells() const { return static_cast<int>(scbs.size()); }
  int ues_in(int cell) const { return static_cast<int>(ues[cell].size()); }
};

NetworkTopology generate_topology(int num_scbs, double area_side_m,
                                  double cell_radius_m, int ues_per_cell,
                                  std::uint64_t seed);

// Closed access: every subscriber must lie within the cell radius of its
// serving base station. Throws ConfigError otherwise.
void validate_topology(const NetworkTopology& topo);

// Plain-text save/load. Positions are written losslessly so a reloaded
// deployment replays bit-identically.
void save_topology(const NetworkTopology& topo, std::ostream& out);
void save_topology_file(const NetworkTopology& topo, const std::string& path);
NetworkTopology load_topology(std::istream& in);
NetworkTopology load_topology_file(const std::string& path);

}  // namespace dyntdd
