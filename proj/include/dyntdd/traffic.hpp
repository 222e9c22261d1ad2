#pragma once

// Poisson flow arrivals with exponentially distributed file sizes, split
// between uplink and downlink by a dB offered-load ratio:
// ratio_db = 10 log10(offered_ul / offered_dl).

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "dyntdd/channel.hpp"
#include "dyntdd/rng.hpp"

namespace dyntdd {

struct TrafficProfile {
  double lambda_ul = 0.0;     // arrivals/s
  double lambda_dl = 0.0;
  double mean_size_ul = 0.0;  // bits
  double mean_size_dl = 0.0;
  double ratio_db = 0.0;

  double offered_ul_bps() const { return lambda_ul * mean_size_ul; }
  double offered_dl_bps() const { return lambda_dl * mean_size_dl; }

  // positivity plus ratio consistency to 1e-9 dB
  void validate() const;
};

// Splits a total offered load so offered_ul + offered_dl = total and
// 10 log10(offered_ul / offered_dl) = ratio_db.
TrafficProfile profile_from_ratio(double total_offered_bps, double ratio_db,
                                  double mean_size_bits);

struct FlowRecord {
  int cell = 0;
  int ue = 0;
  Link direction = Link::UL;
  double size_bits = 0.0;
  double arrival_s = 0.0;
  double residual_bits = 0.0;
  double served_bits = 0.0;
  double completion_s = -1.0;  // < 0: still in flight

  bool completed() const { return completion_s >= 0.0; }
  double delay_s() const { return completion_s - arrival_s; }
  double throughput_bps() const { return size_bits / delay_s(); }
};

// One direction of one cell. Owns its stream; per flow it draws the
// inter-arrival gap, the size, then the serving UE.
class ArrivalGenerator {
 public:
  ArrivalGenerator(Link direction, double lambda, double mean_size_bits,
                   int num_ues, RandomStream stream);

  double next_time() const { return next_time_; }
  FlowRecord pop(int cell);

 private:
  Link direction_;
  double lambda_ = 0.0;
  double mean_size_ = 0.0;
  int num_ues_ = 0;
  double next_time_ = 0.0;
  RandomStream stream_;
};

// All arrivals of one cell in [0, interval), sorted by arrival time. The
// per-direction streams are derived from (seed, cell, direction) exactly as
// the simulation engine derives them.
std::vector<FlowRecord> sample_arrivals(const TrafficProfile& profile,
                                        double interval_s, int cell,
                                        int num_ues, std::uint64_t seed);

RandomStream traffic_stream(std::uint64_t seed, int cell, Link direction);

// Audit/replay trace: one line per arrival.
void write_arrival_trace(std::span<const FlowRecord> flows, std::ostream& out);
std::vector<FlowRecord> load_arrival_trace(std::istream& in);

}  // namespace dyntdd
