#include "hcncov/config_io.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "hcncov/network.hpp"

namespace hcncov {

using nlohmann::json;

namespace {

double require_number(const json& j, const std::string& key) {
  if (!j.contains(key))
    throw std::invalid_argument("config: missing field '" + key + "'");
  if (!j[key].is_number())
    throw std::invalid_argument("config: field '" + key + "' must be a number");
  return j[key].get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number())
    throw std::invalid_argument("config: field '" + key + "' must be a number");
  return j[key].get<double>();
}

}  // namespace

NetworkConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }
  NetworkConfig cfg;
  cfg.alpha = require_number(j, "alpha");
  cfg.user_density = require_number(j, "user_density_per_km2");
  cfg.shadow_sigma_db = require_number(j, "shadow_sigma_db");
  cfg.pcf = require_number(j, "pcf");
  cfg.open_loop_psd_dbm_hz = number_or(j, "open_loop_psd_dbm_hz", -80.0);
  cfg.noise_psd_dbm_hz = number_or(j, "noise_psd_dbm_hz", -174.0);
  cfg.bandwidth_hz = number_or(j, "bandwidth_hz", 10e6);
  cfg.uplink_fraction = number_or(j, "uplink_fraction", 0.5);
  cfg.antenna_gain_db = number_or(j, "antenna_gain_db", 0.0);
  cfg.reference_loss_db = number_or(j, "reference_loss_db", -40.0);

  if (!j.contains("tiers") || !j["tiers"].is_array() || j["tiers"].empty())
    throw std::invalid_argument("config: 'tiers' must be a non-empty array");
  for (const auto& tj : j["tiers"]) {
    TierParams t;
    t.density = require_number(tj, "density_per_km2");
    t.tx_power = db_to_linear(number_or(tj, "tx_power_dbm", 0.0));
    t.ul_weight = db_to_linear(number_or(tj, "ul_weight_db", 0.0));
    t.dl_weight = db_to_linear(number_or(tj, "dl_weight_db", 0.0));
    cfg.tiers.push_back(t);
  }
  validate_config(cfg);
  return cfg;
}

NetworkConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::string config_fingerprint(const NetworkConfig& cfg) {
  // canonical serialization of the parsed (linear) values; key order is
  // fixed here, so the hash is invariant under input reordering
  std::ostringstream ss;
  ss << std::setprecision(17);
  ss << cfg.alpha << '|' << cfg.user_density << '|' << cfg.shadow_sigma_db
     << '|' << cfg.pcf << '|' << cfg.open_loop_psd_dbm_hz << '|'
     << cfg.noise_psd_dbm_hz << '|' << cfg.bandwidth_hz << '|'
     << cfg.uplink_fraction << '|' << cfg.antenna_gain_db << '|'
     << cfg.reference_loss_db;
  for (const auto& t : cfg.tiers)
    ss << '|' << t.density << ',' << t.tx_power << ',' << t.ul_weight << ','
       << t.dl_weight;
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a(ss.str());
  return hex.str();
}

void write_curve_csv(const std::filesystem::path& path,
                     const CoverageCurve& curve, bool rate_axis,
                     const std::vector<double>& halfwidth) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << std::setprecision(12);
  if (!curve.fingerprint.empty())
    out << "# config_fingerprint=" << curve.fingerprint << "\n";
  out << (rate_axis ? "rate_bps" : "threshold_db") << ",value,provenance";
  const bool with_hw = !halfwidth.empty();
  if (with_hw) out << ",wilson_halfwidth";
  out << "\n";
  for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
    const double x =
        rate_axis ? curve.thresholds[i] : linear_to_db(curve.thresholds[i]);
    out << x << ',' << curve.values[i] << ',' << to_string(curve.provenance);
    if (with_hw) out << ',' << halfwidth[i];
    out << "\n";
  }
}

CoverageCurve read_curve_csv(const std::filesystem::path& path,
                             bool rate_axis) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  CoverageCurve curve;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("config_fingerprint=");
      if (pos != std::string::npos)
        curve.fingerprint = line.substr(pos + 19);
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::istringstream ls(line);
    std::string xs, vs, ps;
    std::getline(ls, xs, ',');
    std::getline(ls, vs, ',');
    std::getline(ls, ps, ',');
    const double x = std::stod(xs);
    curve.thresholds.push_back(rate_axis ? x : db_to_linear(x));
    curve.values.push_back(std::stod(vs));
    if (ps == "upper_bound")
      curve.provenance = Provenance::upper_bound;
    else if (ps == "lower_bound")
      curve.provenance = Provenance::lower_bound;
    else if (ps == "simulation")
      curve.provenance = Provenance::simulation;
    else
      curve.provenance = Provenance::exact;
  }
  return curve;
}

void write_joint_csv(const std::filesystem::path& path,
                     const std::vector<JointSurfacePoint>& pts,
                     const std::string& fingerprint) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << std::setprecision(12);
  if (!fingerprint.empty()) out << "# config_fingerprint=" << fingerprint << "\n";
  out << "rho_u_bps,rho_d_bps,value\n";
  for (const auto& p : pts)
    out << p.rho_u << ',' << p.rho_d << ',' << p.value << "\n";
}

void write_manifest(const std::filesystem::path& path, const RunManifest& mf) {
  json j;
  j["command"] = mf.command;
  j["config_fingerprint"] = mf.config_fingerprint;
  j["seed"] = mf.seed;
  j["tool_version"] = mf.tool_version;
  j["started_at"] = mf.started_at;
  j["finished_at"] = mf.finished_at;
  j["outputs"] = mf.outputs;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

std::string tool_version() { return "0.1.0"; }

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

}  // namespace hcncov
