#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace hcncov {

enum class Link { uplink, downlink };

enum class Provenance { exact, upper_bound, lower_bound, simulation };

std::string to_string(Provenance p);

// One AP tier. Linear units throughout; dB only at the config-file boundary.
struct TierParams {
  double density = 0.0;    // APs per km^2
  double tx_power = 1.0;   // downlink transmit power, linear
  double ul_weight = 1.0;  // uplink association weight, linear
  double dl_weight = 1.0;  // downlink association weight, linear
};

// Full scenario description. All fields linear except the *_db / *_dbm_hz ones,
// which only feed the SNR definition.
struct NetworkConfig {
  std::vector<TierParams> tiers;
  double alpha = 3.5;                  // path loss exponent, must exceed 2
  double user_density = 200.0;         // UEs per km^2
  double shadow_sigma_db = 8.0;        // lognormal shadowing std dev, dB
  double pcf = 1.0;                    // power control fraction in [0,1]
  double open_loop_psd_dbm_hz = -80.0;
  double noise_psd_dbm_hz = -174.0;
  double bandwidth_hz = 10e6;
  double uplink_fraction = 0.5;        // fraction of resources for uplink, in (0,1)
  double antenna_gain_db = 0.0;
  double reference_loss_db = -40.0;

  std::size_t num_tiers() const { return tiers.size(); }
  // SNR = Pu * G * L0 / N0, linear.
  double snr_linear() const;
};

// Per-tier constants derived from the config; immutable after construction.
struct DerivedConstants {
  double delta = 0.0;              // 2/alpha
  double s_moment = 1.0;           // E[S^delta]
  std::vector<double> a;           // a_k = lambda_k * pi * E[S^delta]
  std::vector<double> g_ul;        // G_k = sum_j a_j (mu_j/mu_k)^delta
  std::vector<double> g_dl;        // same with downlink weights
  std::vector<double> assoc_ul;    // A_k = a_k / G_k
  std::vector<double> assoc_dl;
  std::vector<double> ul_weight;   // normalized so max = 1
  std::vector<double> dl_weight;

  std::size_t num_tiers() const { return a.size(); }
};

// Config plus derived constants, the working handle for all formula code.
struct Model {
  NetworkConfig cfg;
  DerivedConstants dc;
};

// Sampled threshold -> probability mapping.
struct CoverageCurve {
  std::vector<double> thresholds;  // linear SIR/SINR, or rate in bit/s
  std::vector<double> values;
  Provenance provenance = Provenance::exact;
  std::string fingerprint;
};

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_subdivisions = 4000;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

}  // namespace hcncov
