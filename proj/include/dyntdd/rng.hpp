#pragma once

// Deterministic random streams. Every stochastic component owns a stream
// derived from (master seed, purpose tag, ids), so a run replays
// bit-identically and parallel replications never share generator state.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace dyntdd {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static RandomStream derive(std::uint64_t seed, std::string_view tag,
                             std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the tag
    for (char c : tag) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
    h = splitmix64(h ^ seed);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    return RandomStream(h);
  }

  // [0, 1) with 53-bit resolution
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  // mean > 0; returns 0 when mean == 0
  double exponential(double mean) { return -mean * std::log1p(-uniform01()); }

  // inclusive bounds
  int uniform_int(int lo, int hi) {
    const int n = hi - lo + 1;
    const int k = static_cast<int>(uniform01() * n);
    return lo + (k < n ? k : n - 1);
  }

  // index drawn from a normalized probability vector
  std::size_t categorical(std::span<const double> probs) {
    const double u = uniform01();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
      acc += probs[i];
      if (u < acc) return i;
    }
    return probs.empty() ? 0 : probs.size() - 1;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dyntdd
