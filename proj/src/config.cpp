#include "dyntdd/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dyntdd/errors.hpp"

namespace dyntdd {

double ScenarioConfig::cell_ratio_db(int cell) const {
  if (cell < 0 || cell >= num_scbs)
    throw ContractViolation("config: cell out of range");
  return cell_ratios_db.empty() ? ratio_db : cell_ratios_db[cell];
}

double ScenarioConfig::cell_beta(int cell) const {
  if (cell < 0 || cell >= num_scbs)
    throw ContractViolation("config: cell out of range");
  const double inv =
      cell_one_over_beta.empty() ? learning.one_over_beta : cell_one_over_beta[cell];
  return 1.0 / inv;
}

std::string ScenarioConfig::cell_policy_name(int cell) const {
  if (cell < 0 || cell >= num_scbs)
    throw ContractViolation("config: cell out of range");
  return cell_policies.empty() ? policy : cell_policies[cell];
}

namespace {

bool known_policy(const std::string& p) {
  return p == "learner" || p == "fixed" || p == "random";
}

}  // namespace

void ScenarioConfig::validate() const {
  if (num_scbs < 1 || num_scbs > 64)
    throw ConfigError("num_scbs: must be in [1, 64]");
  if (ues_per_cell < 1 || ues_per_cell > 20)
    throw ConfigError("ues_per_cell: must be in [1, 20]");
  if (!(area_side_m > 0.0)) throw ConfigError("area_side_m: must be > 0");
  if (!(cell_radius_m > 0.0)) throw ConfigError("cell_radius_m: must be > 0");
  if (!(power.bandwidth_hz > 0.0)) throw ConfigError("bandwidth_hz: must be > 0");
  if (!std::isfinite(power.scbs_power_dbm))
    throw ConfigError("scbs_power_dbm: must be finite");
  if (!std::isfinite(power.ue_power_dbm))
    throw ConfigError("ue_power_dbm: must be finite");
  if (!std::isfinite(power.noise_dbm_per_hz))
    throw ConfigError("noise_dbm_hz: must be finite");
  if (power.penetration_loss_db < 0.0)
    throw ConfigError("penetration_loss_db: must be >= 0");
  if (num_subframes < 2)
    throw ConfigError("num_subframes: must be >= 2 (one switching point)");
  if (!(subframe_duration_s > 0.0))
    throw ConfigError("subframe_duration_s: must be > 0");
  if (offered_load_bps < 0.0) throw ConfigError("offered_load_bps: must be >= 0");
  if (!(mean_file_size_bits > 0.0))
    throw ConfigError("mean_file_size_bits: must be > 0");
  if (!std::isfinite(ratio_db)) throw ConfigError("ratio_db: must be finite");
  if (!cell_ratios_db.empty() &&
      static_cast<int>(cell_ratios_db.size()) != num_scbs)
    throw ConfigError("cell_ratios_db: needs one entry per cell (num_scbs)");
  if (!known_policy(policy))
    throw ConfigError("policy: must be one of learner, fixed, random");
  if (!cell_policies.empty()) {
    if (static_cast<int>(cell_policies.size()) != num_scbs)
      throw ConfigError("cell_policies: needs one entry per cell (num_scbs)");
    for (const auto& p : cell_policies) {
      if (!known_policy(p))
        throw ConfigError("cell_policies: must be one of learner, fixed, random");
    }
  }
  if (fixed_switching_point != 0 &&
      (fixed_switching_point < 1 || fixed_switching_point > wf())) {
    throw ConfigError("fixed_switching_point: must be in 1.." +
                      std::to_string(wf()) + " (or 0 for the half-frame default)");
  }
  if (sim_subframes < 1) throw ConfigError("sim_subframes: must be >= 1");
  if (sim_subframes % wf() != 0)
    throw ConfigError("sim_subframes: must be a multiple of the " +
                      std::to_string(wf()) + " schedulable subframes per frame");
  if (!(learning.one_over_beta > 0.0))
    throw ConfigError("one_over_beta: must be > 0");
  if (!cell_one_over_beta.empty()) {
    if (static_cast<int>(cell_one_over_beta.size()) != num_scbs)
      throw ConfigError("cell_one_over_beta: needs one entry per cell (num_scbs)");
    for (double v : cell_one_over_beta) {
      if (!(v > 0.0)) throw ConfigError("cell_one_over_beta: entries must be > 0");
    }
  }
  if (!(learning.rates.alpha_exponent > 0.0))
    throw ConfigError("alpha_exponent: must be > 0");
  if (!(learning.rates.zeta_exponent > 0.0))
    throw ConfigError("zeta_exponent: must be > 0");
  if (learning.max_learning_frames < 0)
    throw ConfigError("max_learning_frames: must be >= 0");
  if (!(rho_max > 0.0) || !(rho_max < 1.0))
    throw ConfigError("rho_max: must be in (0, 1)");
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
  if (pos != value.size())
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  return v;
}

long parse_long(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  long v;
  try {
    v = std::stol(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
  if (pos != value.size())
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  return static_cast<int>(parse_long(key, value));
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  unsigned long long v;
  try {
    v = std::stoull(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + value + "'");
  }
  if (pos != value.size())
    throw ConfigError(key + ": expected a non-negative integer, got '" + value + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  for (char c : value) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!item.empty()) out.push_back(std::move(item)), item.clear();
    } else {
      item.push_back(c);
    }
  }
  if (!item.empty()) out.push_back(std::move(item));
  return out;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const auto& item : split_list(value)) out.push_back(parse_double(key, item));
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ScenarioConfig parse_config(std::istream& in) {
  ScenarioConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "num_scbs") cfg.num_scbs = parse_int(key, value);
    else if (key == "ues_per_cell") cfg.ues_per_cell = parse_int(key, value);
    else if (key == "area_side_m") cfg.area_side_m = parse_double(key, value);
    else if (key == "cell_radius_m") cfg.cell_radius_m = parse_double(key, value);
    else if (key == "bandwidth_hz") cfg.power.bandwidth_hz = parse_double(key, value);
    else if (key == "scbs_power_dbm") cfg.power.scbs_power_dbm = parse_double(key, value);
    else if (key == "ue_power_dbm") cfg.power.ue_power_dbm = parse_double(key, value);
    else if (key == "noise_dbm_hz") cfg.power.noise_dbm_per_hz = parse_double(key, value);
    else if (key == "penetration_loss_db")
      cfg.power.penetration_loss_db = parse_double(key, value);
    else if (key == "num_subframes") cfg.num_subframes = parse_int(key, value);
    else if (key == "subframe_duration_s")
      cfg.subframe_duration_s = parse_double(key, value);
    else if (key == "offered_load_bps") cfg.offered_load_bps = parse_double(key, value);
    else if (key == "mean_file_size_bits")
      cfg.mean_file_size_bits = parse_double(key, value);
    else if (key == "ratio_db") cfg.ratio_db = parse_double(key, value);
    else if (key == "cell_ratios_db") cfg.cell_ratios_db = parse_double_list(key, value);
    else if (key == "deterministic_traffic")
      cfg.deterministic_traffic = parse_bool(key, value);
    else if (key == "policy") cfg.policy = value;
    else if (key == "cell_policies") cfg.cell_policies = split_list(value);
    else if (key == "fixed_switching_point")
      cfg.fixed_switching_point = parse_int(key, value);
    else if (key == "one_over_beta") cfg.learning.one_over_beta = parse_double(key, value);
    else if (key == "cell_one_over_beta")
      cfg.cell_one_over_beta = parse_double_list(key, value);
    else if (key == "alpha_exponent")
      cfg.learning.rates.alpha_exponent = parse_double(key, value);
    else if (key == "zeta_exponent")
      cfg.learning.rates.zeta_exponent = parse_double(key, value);
    else if (key == "max_learning_frames")
      cfg.learning.max_learning_frames = parse_int(key, value);
    else if (key == "sim_subframes") cfg.sim_subframes = parse_long(key, value);
    else if (key == "seed") cfg.seed = parse_u64(key, value);
    else if (key == "collect_after_freeze_only")
      cfg.collect_after_freeze_only = parse_bool(key, value);
    else if (key == "trace_loads") cfg.trace_loads = parse_bool(key, value);
    else if (key == "rho_max") cfg.rho_max = parse_double(key, value);
    else
      throw ConfigError("unknown key '" + key + "' (line " + std::to_string(line_no) +
                        ")");
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file: " + path);
  return parse_config(in);
}

void emit_config(const ScenarioConfig& cfg, std::ostream& out) {
  out << "num_scbs = " << cfg.num_scbs << "\n";
  out << "ues_per_cell = " << cfg.ues_per_cell << "\n";
  out << "area_side_m = " << fmt(cfg.area_side_m) << "\n";
  out << "cell_radius_m = " << fmt(cfg.cell_radius_m) << "\n";
  out << "bandwidth_hz = " << fmt(cfg.power.bandwidth_hz) << "\n";
  out << "scbs_power_dbm = " << fmt(cfg.power.scbs_power_dbm) << "\n";
  out << "ue_power_dbm = " << fmt(cfg.power.ue_power_dbm) << "\n";
  out << "noise_dbm_hz = " << fmt(cfg.power.noise_dbm_per_hz) << "\n";
  out << "penetration_loss_db = " << fmt(cfg.power.penetration_loss_db) << "\n";
  out << "num_subframes = " << cfg.num_subframes << "\n";
  out << "subframe_duration_s = " << fmt(cfg.subframe_duration_s) << "\n";
  out << "offered_load_bps = " << fmt(cfg.offered_load_bps) << "\n";
  out << "mean_file_size_bits = " << fmt(cfg.mean_file_size_bits) << "\n";
  out << "ratio_db = " << fmt(cfg.ratio_db) << "\n";
  if (!cfg.cell_ratios_db.empty()) {
    out << "cell_ratios_db =";
    for (double v : cfg.cell_ratios_db) out << " " << fmt(v);
    out << "\n";
  }
  out << "deterministic_traffic = " << (cfg.deterministic_traffic ? "true" : "false")
      << "\n";
  out << "policy = " << cfg.policy << "\n";
  if (!cfg.cell_policies.empty()) {
    out << "cell_policies =";
    for (const auto& p : cfg.cell_policies) out << " " << p;
    out << "\n";
  }
  out << "fixed_switching_point = " << cfg.fixed_switching_point << "\n";
  out << "one_over_beta = " << fmt(cfg.learning.one_over_beta) << "\n";
  if (!cfg.cell_one_over_beta.empty()) {
    out << "cell_one_over_beta =";
    for (double v : cfg.cell_one_over_beta) out << " " << fmt(v);
    out << "\n";
  }
  out << "alpha_exponent = " << fmt(cfg.learning.rates.alpha_exponent) << "\n";
  out << "zeta_exponent = " << fmt(cfg.learning.rates.zeta_exponent) << "\n";
  out << "max_learning_frames = " << cfg.learning.max_learning_frames << "\n";
  out << "sim_subframes = " << cfg.sim_subframes << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "collect_after_freeze_only = "
      << (cfg.collect_after_freeze_only ? "true" : "false") << "\n";
  out << "trace_loads = " << (cfg.trace_loads ? "true" : "false") << "\n";
  out << "rho_max = " << fmt(cfg.rho_max) << "\n";
}

std::string emit_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  emit_config(cfg, out);
  return out.str();
}

}  // namespace dyntdd
