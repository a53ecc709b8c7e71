#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hcncov/parallel.hpp"
#include "hcncov/rng.hpp"
#include "hcncov/types.hpp"

namespace hcncov {

struct SimOptions {
  double window_km = 0.0;        // 0 -> side giving >= 500 APs of the sparsest tier
  std::uint64_t seed = 1;
  double prune_sigmas = 5.0;     // shadowing slack for association pruning
  // Scheduling user density for SINR-only runs. The SINR law does not depend
  // on the user density (each AP's active interferer is uniform on its cell
  // either way), so SINR batches default to min(lambda_u, 2 * sum lambda_k).
  double sinr_user_density = -1.0;  // <0 -> automatic
  Exec exec = Exec::parallel;
};

// One Monte Carlo realization: AP/UE points on a torus window. Shadowing is
// a deterministic lazy function of (trial seed, ue, ap), shared by both links.
struct Deployment {
  double side = 0.0;  // km, wrap-around metric
  std::uint64_t trial_seed = 0;
  std::vector<double> ap_x, ap_y;
  std::vector<std::uint32_t> ap_tier;
  std::vector<std::uint32_t> tier_start;  // per-tier offset into ap arrays
  std::vector<double> ue_x, ue_y;         // typical UE at origin is separate

  // per-tier spatial grids (cell size matched to the tier density) with
  // packed per-cell coordinate arrays for the association scan
  struct TierGrid {
    int n = 0;
    double inv_cell = 0.0;
    std::vector<std::uint32_t> cell_start;  // CSR offsets, n*n + 1
    std::vector<double> x, y;               // packed by cell
    std::vector<std::uint32_t> id;          // global AP index
  };
  std::vector<TierGrid> grid;
};

// Association of one point: serving AP and the (linear) path loss to it.
struct AssocResult {
  std::vector<std::uint32_t> serving_ap;  // per UE
  std::vector<double> path_loss;          // per UE, linear
  std::vector<std::uint32_t> cell_count;  // per AP
};

// Per-AP scheduled uplink interferer on the typical resource block.
struct ScheduledRealization {
  std::uint32_t tagged_ap = 0;
  double tagged_pl = 0.0;           // typical UE -> tagged AP
  std::uint32_t tagged_tier = 0;
  // one entry per non-tagged AP: position, path loss to own AP, shadowing id
  std::vector<double> intf_x, intf_y, intf_own_pl;
  std::vector<std::uint32_t> intf_ap;
  std::vector<std::uint64_t> intf_ue;
};

Deployment generate_deployment(const Model& m, double window_km,
                               std::uint64_t trial_seed, double user_density);

// Weighted path-loss association of every UE (and any extra point through
// associate_point). weights must be the normalized per-tier weights.
AssocResult associate(const Model& m, const Deployment& dep,
                      const std::vector<double>& weights, double prune_sigmas);

// Association of a single location; ue_id selects the shadowing stream
// (the typical UE uses id 0, Poisson UEs use 1..N, synthetics use >= N+1).
struct PointAssoc {
  std::uint32_t ap = 0;
  double path_loss = 0.0;
};
PointAssoc associate_point(const Model& m, const Deployment& dep, double px,
                           double py, std::uint64_t ue_id,
                           const std::vector<double>& weights,
                           double prune_sigmas);

// Number of UEs whose weighted-association argmax is the given AP. Cheaper
// than a full association pass when only one AP's cell population is needed.
std::uint32_t count_members(const Model& m, const Deployment& dep,
                            std::uint32_t ap, const std::vector<double>& weights,
                            double prune_sigmas);

// Schedules one uplink interferer per non-tagged AP: a uniformly chosen
// associated UE, or a synthetic UE drawn uniformly from the cell when empty.
// Returns nullopt if synthetic sampling failed (caller resamples the trial).
std::optional<ScheduledRealization> schedule_uplink(
    const Model& m, const Deployment& dep, const AssocResult& assoc,
    double prune_sigmas, SplitMix& rng);

// Uplink SINR of the typical UE (Eq. of the system model) for each pcf value,
// with one shared fading draw per link.
std::vector<double> measure_ul_sinr(const Model& m, const Deployment& dep,
                                    const ScheduledRealization& sched,
                                    const std::vector<double>& pcf_values,
                                    SplitMix& rng);

// Batch runners. Outputs are indexed by trial and independent of the
// execution policy (each trial derives its own seed).
struct SinrBatch {
  // samples[e][t] = uplink SINR (linear) of trial t under pcf_values[e]
  std::vector<std::vector<double>> samples;
  std::vector<std::uint32_t> serving_tier;  // per trial
};
SinrBatch run_sinr_batch(const Model& m, std::size_t trials,
                         const std::vector<double>& pcf_values,
                         const SimOptions& opt);

struct RateBatch {
  std::vector<double> ul_sinr;     // linear
  std::vector<double> ul_rate;     // bit/s
  std::vector<double> dl_sir;      // linear (joint runs only)
  std::vector<double> dl_rate;     // bit/s (joint runs only)
  std::vector<std::uint32_t> ul_tier, dl_tier;
  std::vector<std::uint32_t> ul_load, dl_load;
};
RateBatch run_rate_batch(const Model& m, std::size_t trials,
                         const SimOptions& opt);
RateBatch run_joint_batch(const Model& m, std::size_t trials,
                          const SimOptions& opt);

// Path losses from tier-j interferers to the tagged AP, with the tagged tier,
// for validating the interferer propagation-process intensity.
struct IntensitySamples {
  std::vector<std::vector<double>> pl_by_tier;  // path losses, per tier
  std::size_t trials_used = 0;
};
IntensitySamples collect_interferer_pl(const Model& m, std::size_t trials,
                                       std::size_t tagged_tier,
                                       double max_distance_km,
                                       const SimOptions& opt);

// Empirical CCDF over the given thresholds plus Wilson half-widths.
struct EmpiricalCcdf {
  std::vector<double> thresholds;
  std::vector<double> value;
  std::vector<double> wilson_halfwidth;
};
EmpiricalCcdf empirical_ccdf(const std::vector<double>& samples,
                             const std::vector<double>& thresholds);

// Default window side: >= 500 expected APs in the sparsest tier, floor 4 km.
double default_window_km(const NetworkConfig& cfg);

}  // namespace hcncov
