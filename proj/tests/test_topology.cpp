#include <doctest.h>

#include <sstream>

#include "dyntdd/errors.hpp"
#include "dyntdd/topology.hpp"

using namespace dyntdd;

TEST_CASE("generated deployments respect the geometry") {
  const NetworkTopology topo = generate_topology(4, 200.0, 40.0, 20, 11);
  REQUIRE(topo.num_cells() == 4);
  int total_ues = 0;
  for (int b = 0; b < 4; ++b) {
    CHECK(topo.scbs[b].x >= 0.0);
    CHECK(topo.scbs[b].x <= 200.0);
    CHECK(topo.scbs[b].y >= 0.0);
    CHECK(topo.scbs[b].y <= 200.0);
    total_ues += topo.ues_in(b);
    for (const Point& u : topo.ues[b]) {
      CHECK(distance(u, topo.scbs[b]) <= 40.0);
    }
  }
  CHECK(total_ues == 80);
  CHECK_NOTHROW(validate_topology(topo));
}

TEST_CASE("degenerate single-cell deployment is allowed") {
  const NetworkTopology topo = generate_topology(1, 100.0, 40.0, 1, 3);
  CHECK(topo.num_cells() == 1);
  CHECK(topo.ues_in(0) == 1);
}

TEST_CASE("same seed reproduces the deployment bit for bit") {
  const NetworkTopology a = generate_topology(5, 300.0, 40.0, 7, 1234);
  const NetworkTopology b = generate_topology(5, 300.0, 40.0, 7, 1234);
  REQUIRE(a.num_cells() == b.num_cells());
  for (int c = 0; c < a.num_cells(); ++c) {
    CHECK(a.scbs[c].x == b.scbs[c].x);
    CHECK(a.scbs[c].y == b.scbs[c].y);
    for (int k = 0; k < a.ues_in(c); ++k) {
      CHECK(a.ues[c][k].x == b.ues[c][k].x);
      CHECK(a.ues[c][k].y == b.ues[c][k].y);
    }
  }
  const NetworkTopology other = generate_topology(5, 300.0, 40.0, 7, 1235);
  CHECK(a.scbs[0].x != other.scbs[0].x);
}

TEST_CASE("invalid generation inputs are rejected") {
  CHECK_THROWS_AS(generate_topology(0, 200.0, 40.0, 20, 1), ConfigError);
  CHECK_THROWS_AS(generate_topology(4, 0.0, 40.0, 20, 1), ConfigError);
  CHECK_THROWS_AS(generate_topology(4, 200.0, 0.0, 20, 1), ConfigError);
  CHECK_THROWS_AS(generate_topology(4, 200.0, 40.0, 0, 1), ConfigError);
}

TEST_CASE("save/load round-trips bit-exactly") {
  const NetworkTopology topo = generate_topology(3, 150.0, 40.0, 5, 77);
  std::stringstream buf;
  save_topology(topo, buf);
  const NetworkTopology back = load_topology(buf);
  CHECK(back.seed == topo.seed);
  CHECK(back.area_side_m == topo.area_side_m);
  CHECK(back.cell_radius_m == topo.cell_radius_m);
  REQUIRE(back.num_cells() == topo.num_cells());
  for (int b = 0; b < topo.num_cells(); ++b) {
    CHECK(back.scbs[b].x == topo.scbs[b].x);
    CHECK(back.scbs[b].y == topo.scbs[b].y);
    REQUIRE(back.ues_in(b) == topo.ues_in(b));
    for (int k = 0; k < topo.ues_in(b); ++k) {
      CHECK(back.ues[b][k].x == topo.ues[b][k].x);
      CHECK(back.ues[b][k].y == topo.ues[b][k].y);
    }
  }

  std::stringstream again;
  save_topology(back, again);
  std::stringstream first;
  save_topology(topo, first);
  CHECK(again.str() == first.str());
}

TEST_CASE("loading rejects a subscriber outside its cell") {
  NetworkTopology topo = generate_topology(2, 150.0, 40.0, 2, 8);
  topo.ues[1][0].x = topo.scbs[1].x + 100.0;  // push it out of the disk
  std::stringstream buf;
  save_topology(topo, buf);
  CHECK_THROWS_AS(load_topology(buf), ConfigError);
}

TEST_CASE("loading rejects unknown keys") {
  std::stringstream buf("format dyntdd-topology-1\nnum_scbs 1\nscbs 0 1 1\nbogus 3\n");
  CHECK_THROWS_AS(load_topology(buf), ConfigError);
}
