#include "dyntdd/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "dyntdd/errors.hpp"

namespace dyntdd {

void TrafficProfile::validate() const {
  if (!(lambda_ul > 0.0) || !(lambda_dl > 0.0))
    throw ConfigError("traffic profile: arrival rates must be > 0");
  if (!(mean_size_ul > 0.0) || !(mean_size_dl > 0.0))
    throw ConfigError("traffic profile: mean sizes must be > 0");
  const double implied = 10.0 * std::log10(offered_ul_bps() / offered_dl_bps());
  if (std::abs(implied - ratio_db) > 1e-9)
    throw ConfigError("traffic profile: ratio_db inconsistent with rates and sizes");
}

TrafficProfile profile_from_ratio(double total_offered_bps, double ratio_db,
                                  double mean_size_bits) {
  if (!(total_offered_bps > 0.0))
    throw ContractViolation("profile_from_ratio: total offered load must be > 0");
  if (!(mean_size_bits > 0.0))
    throw ContractViolation("profile_from_ratio: mean size must be > 0");
  const double r = std::pow(10.0, ratio_db / 10.0);
  TrafficProfile p;
  p.mean_size_ul = mean_size_bits;
  p.mean_size_dl = mean_size_bits;
  p.ratio_db = ratio_db;
  const double offered_ul = total_offered_bps * r / (1.0 + r);
  const double offered_dl = total_offered_bps / (1.0 + r);
  p.lambda_ul = offered_ul / mean_size_bits;
  p.lambda_dl = offered_dl / mean_size_bits;
  return p;
}

ArrivalGenerator::ArrivalGenerator(Link direction, double lambda,
                                   double mean_size_bits, int num_ues,
                                   RandomStream stream)
    : direction_(direction),
      lambda_(lambda),
      mean_size_(mean_size_bits),
      num_ues_(num_ues),
      stream_(stream) {
  if (lambda_ < 0.0) throw ContractViolation("arrivals: lambda must be >= 0");
  if (num_ues_ < 1) throw ContractViolation("arrivals: need at least one UE");
  next_time_ = lambda_ > 0.0 ? stream_.exponential(1.0 / lambda_)
                             : std::numeric_limits<double>::infinity();
}

FlowRecord ArrivalGenerator::pop(int cell) {
  if (!(next_time_ < std::numeric_limits<double>::infinity()))
    throw ContractViolation("arrivals: pop on an empty generator");
  FlowRecord rec;
  rec.cell = cell;
  rec.direction = direction_;
  rec.arrival_s = next_time_;
  rec.size_bits = stream_.exponential(mean_size_);
  rec.residual_bits = rec.size_bits;
  rec.ue = stream_.uniform_int(0, num_ues_ - 1);
  next_time_ += stream_.exponential(1.0 / lambda_);
  return rec;
}

RandomStream traffic_stream(std::uint64_t seed, int cell, Link direction) {
  return RandomStream::derive(seed, "traffic", static_cast<std::uint64_t>(cell),
                              direction == Link::UL ? 0 : 1);
}

std::vector<FlowRecord> sample_arrivals(const TrafficProfile& profile,
                                        double interval_s, int cell,
                                        int num_ues, std::uint64_t seed) {
  if (!(interval_s > 0.0))
    throw ContractViolation("sample_arrivals: interval must be > 0");
  std::vector<FlowRecord> out;
  for (Link dir : {Link::UL, Link::DL}) {
    const double lambda = dir == Link::UL ? profile.lambda_ul : profile.lambda_dl;
    const double mean = dir == Link::UL ? profile.mean_size_ul : profile.mean_size_dl;
    ArrivalGenerator gen(dir, lambda, mean, num_ues, traffic_stream(seed, cell, dir));
    while (gen.next_time() < interval_s) out.push_back(gen.pop(cell));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const FlowRecord& a, const FlowRecord& b) {
                     return a.arrival_s < b.arrival_s;
                   });
  return out;
}

void write_arrival_trace(std::span<const FlowRecord> flows, std::ostream& out) {
  out << "arrival_s,cell,ue,direction,size_bits\n";
  char buf[96];
  for (const FlowRecord& f : flows) {
    std::snprintf(buf, sizeof buf, "%.17g,%d,%d,%s,%.17g\n", f.arrival_s, f.cell,
                  f.ue, to_string(f.direction), f.size_bits);
    out << buf;
  }
}

std::vector<FlowRecord> load_arrival_trace(std::istream& in) {
  std::vector<FlowRecord> out;
  std::string line;
  if (!std::getline(in, line) || line != "arrival_s,cell,ue,direction,size_bits")
    throw ConfigError("arrival trace: missing or unexpected header row");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    FlowRecord f;
    std::string dir;
    ls >> f.arrival_s >> f.cell >> f.ue >> dir >> f.size_bits;
    if (!ls || (dir != "UL" && dir != "DL"))
      throw ConfigError("arrival trace: malformed record: " + line);
    f.direction = dir == "UL" ? Link::UL : Link::DL;
    f.residual_bits = f.size_bits;
    out.push_back(f);
  }
  return out;
}

}  // namespace dyntdd
