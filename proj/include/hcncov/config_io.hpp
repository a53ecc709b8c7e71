#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hcncov/types.hpp"

namespace hcncov {

// Reads a JSON network config. dB-valued fields carry a _db / _dbm /
// _dbm_hz suffix and are converted to linear units here; core modules never
// see dB. See configs/table1_twotier.json for the documented schema.
NetworkConfig load_config(const std::filesystem::path& path);
NetworkConfig parse_config(const std::string& json_text);

// Stable hexadecimal fingerprint of the parsed config (invariant under key
// reordering and whitespace).
std::string config_fingerprint(const NetworkConfig& cfg);

// CSV with header "threshold_db,value,provenance" (or rate_bps for rate
// curves). Comment lines starting with '#' carry the fingerprint.
void write_curve_csv(const std::filesystem::path& path,
                     const CoverageCurve& curve, bool rate_axis,
                     const std::vector<double>& halfwidth = {});
CoverageCurve read_curve_csv(const std::filesystem::path& path,
                             bool rate_axis);

struct JointSurfacePoint {
  double rho_u = 0.0, rho_d = 0.0, value = 0.0;
};
void write_joint_csv(const std::filesystem::path& path,
                     const std::vector<JointSurfacePoint>& pts,
                     const std::string& fingerprint);

struct RunManifest {
  std::string command;
  std::string config_fingerprint;
  std::uint64_t seed = 0;
  std::string tool_version;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;
};
void write_manifest(const std::filesystem::path& path, const RunManifest& mf);

std::string tool_version();
std::string iso_timestamp();

}  // namespace hcncov
