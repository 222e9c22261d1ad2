#include "dyntdd/topology.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "dyntdd/errors.hpp"
#include "dyntdd/rng.hpp"

namespace dyntdd {

double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

NetworkTopology generate_topology(int num_scbs, double area_side_m,
                                  double cell_radius_m, int ues_per_cell,
                                  std::uint64_t seed) {
  if (num_scbs < 1) throw ConfigError("num_scbs: must be >= 1");
  if (ues_per_cell < 1) throw ConfigError("ues_per_cell: must be >= 1");
  if (!(area_side_m > 0.0)) throw ConfigError("area_side_m: must be > 0");
  if (!(cell_radius_m > 0.0)) throw ConfigError("cell_radius_m: must be > 0");

  NetworkTopology topo;
  topo.cell_radius_m = cell_radius_m;
  topo.area_side_m = area_side_m;
  topo.seed = seed;

  RandomStream rng = RandomStream::derive(seed, "topology");
  topo.scbs.resize(num_scbs);
  for (Point& p : topo.scbs) {
    p.x = rng.uniform(0.0, area_side_m);
    p.y = rng.uniform(0.0, area_side_m);
  }

  topo.ues.resize(num_scbs);
  for (int b = 0; b < num_scbs; ++b) {
    topo.ues[b].resize(ues_per_cell);
    for (Point& u : topo.ues[b]) {
      // uniform over the disk: radius scales with sqrt(u)
      const double r = cell_radius_m * std::sqrt(rng.uniform01());
      const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
      u.x = topo.scbs[b].x + r * std::cos(theta);
      u.y = topo.scbs[b].y + r * std::sin(theta);
    }
  }
  return topo;
}

void validate_topology(const NetworkTopology& topo) {
  if (topo.scbs.empty()) throw ConfigError("topology: no base stations");
  if (topo.ues.size() != topo.scbs.size())
    throw ConfigError("topology: UE lists do not match base station count");
  if (!(topo.cell_radius_m > 0.0)) throw ConfigError("topology: cell_radius must be > 0");
  if (!(topo.area_side_m > 0.0)) throw ConfigError("topology: area_side must be > 0");
  const double slack = topo.cell_radius_m * (1.0 + 1e-9);
  for (int b = 0; b < topo.num_cells(); ++b) {
    for (const Point& u : topo.ues[b]) {
      if (distance(u, topo.scbs[b]) > slack) {
        throw ConfigError("topology: UE outside the radius of its serving cell " +
                          std::to_string(b));
      }
    }
  }
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void save_topology(const NetworkTopology& topo, std::ostream& out) {
  out << "format dyntdd-topology-1\n";
  out << "seed " << topo.seed << "\n";
  out << "area_side_m " << fmt(topo.area_side_m) << "\n";
  out << "cell_radius_m " << fmt(topo.cell_radius_m) << "\n";
  out << "num_scbs " << topo.num_cells() << "\n";
  for (int b = 0; b < topo.num_cells(); ++b) {
    out << "scbs " << b << " " << fmt(topo.scbs[b].x) << " " << fmt(topo.scbs[b].y)
        << "\n";
  }
  for (int b = 0; b < topo.num_cells(); ++b) {
    for (int k = 0; k < topo.ues_in(b); ++k) {
      out << "ue " << b << " " << k << " " << fmt(topo.ues[b][k].x) << " "
          << fmt(topo.ues[b][k].y) << "\n";
    }
  }
}

void save_topology_file(const NetworkTopology& topo, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write topology file: " + path);
  save_topology(topo, out);
}

NetworkTopology load_topology(std::istream& in) {
  NetworkTopology topo;
  std::string line;
  int num_scbs = -1;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "format") {
      std::string v;
      ls >> v;
      if (v != "dyntdd-topology-1")
        throw ConfigError("topology file: unknown format '" + v + "'");
      header_seen = true;
    } else if (key == "seed") {
      ls >> topo.seed;
    } else if (key == "area_side_m") {
      ls >> topo.area_side_m;
    } else if (key == "cell_radius_m") {
      ls >> topo.cell_radius_m;
    } else if (key == "num_scbs") {
      ls >> num_scbs;
      if (num_scbs < 1) throw ConfigError("topology file: num_scbs must be >= 1");
      topo.scbs.resize(num_scbs);
      topo.ues.resize(num_scbs);
    } else if (key == "scbs") {
      int b;
      Point p;
      ls >> b >> p.x >> p.y;
      if (!ls || b < 0 || b >= num_scbs)
        throw ConfigError("topology file: bad scbs record: " + line);
      topo.scbs[b] = p;
    } else if (key == "ue") {
      int b, k;
      Point p;
      ls >> b >> k >> p.x >> p.y;
      if (!ls || b < 0 || b >= num_scbs || k < 0)
        throw ConfigError("topology file: bad ue record: " + line);
      if (static_cast<int>(topo.ues[b].size()) <= k) topo.ues[b].resize(k + 1);
      topo.ues[b][k] = p;
    } else {
      throw ConfigError("topology file: unknown key '" + key + "'");
    }
    if (ls.fail()) throw ConfigError("topology file: malformed line: " + line);
  }
  if (!header_seen) throw ConfigError("topology file: missing format header");
  validate_topology(topo);
  return topo;
}

NetworkTopology load_topology_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read topology file: " + path);
  return load_topology(in);
}

}  // namespace dyntdd
