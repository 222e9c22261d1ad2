#include <doctest.h>

#include <cmath>
#include <vector>

#include "dyntdd/rng.hpp"

using namespace dyntdd;

TEST_CASE("derived streams are reproducible and tag-separated") {
  RandomStream a = RandomStream::derive(7, "traffic", 1, 0);
  RandomStream b = RandomStream::derive(7, "traffic", 1, 0);
  RandomStream c = RandomStream::derive(7, "traffic", 2, 0);
  RandomStream d = RandomStream::derive(7, "action", 1, 0);
  bool identical = true, differs_id = false, differs_tag = false;
  for (int i = 0; i < 64; ++i) {
    const double va = a.uniform01();
    identical = identical && va == b.uniform01();
    differs_id = differs_id || va != c.uniform01();
    differs_tag = differs_tag || va != d.uniform01();
  }
  CHECK(identical);
  CHECK(differs_id);
  CHECK(differs_tag);
}

TEST_CASE("uniform01 stays in [0, 1)") {
  RandomStream rng(123);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("uniform_int covers its inclusive bounds") {
  RandomStream rng(5);
  bool saw_lo = false, saw_hi = false;
  for (int i = 0; i < 1000; ++i) {
    const int v = rng.uniform_int(2, 4);
    CHECK(v >= 2);
    CHECK(v <= 4);
    saw_lo = saw_lo || v == 2;
    saw_hi = saw_hi || v == 4;
  }
  CHECK(saw_lo);
  CHECK(saw_hi);
}

TEST_CASE("exponential sample mean approaches the requested mean") {
  RandomStream rng(99);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += rng.exponential(3.0);
  CHECK(std::abs(sum / n - 3.0) < 0.05);
}

TEST_CASE("categorical respects a one-hot distribution") {
  RandomStream rng(1);
  const std::vector<double> probs = {0.0, 0.0, 1.0, 0.0};
  for (int i = 0; i < 100; ++i) CHECK(rng.categorical(probs) == 2);
}
