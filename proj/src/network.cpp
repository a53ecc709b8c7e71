#include "hcncov/network.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hcncov {

std::string validation_errors(const NetworkConfig& cfg) {
  std::ostringstream err;
  auto fail = [&err](const std::string& msg) { err << msg << "\n"; };

  if (cfg.tiers.empty()) fail("at least one tier is required");
  for (std::size_t k = 0; k < cfg.tiers.size(); ++k) {
    const auto& t = cfg.tiers[k];
    if (!(t.density > 0.0))
      fail("tier " + std::to_string(k + 1) + ": density must be positive");
    if (!(t.ul_weight > 0.0))
      fail("tier " + std::to_string(k + 1) + ": ul_weight must be positive");
    if (!(t.dl_weight > 0.0))
      fail("tier " + std::to_string(k + 1) + ": dl_weight must be positive");
    if (!(t.tx_power > 0.0))
      fail("tier " + std::to_string(k + 1) + ": tx_power must be positive");
  }
  if (!(cfg.alpha > 2.0)) fail("alpha must exceed 2");
  if (!(cfg.pcf >= 0.0 && cfg.pcf <= 1.0)) fail("pcf outside [0,1]");
  if (!(cfg.user_density >= 0.0)) fail("user_density must be nonnegative");
  if (!(cfg.shadow_sigma_db >= 0.0)) fail("shadow_sigma_db must be >= 0");
  if (!(cfg.uplink_fraction > 0.0 && cfg.uplink_fraction < 1.0))
    fail("uplink_fraction must lie in (0,1)");
  if (!(cfg.bandwidth_hz > 0.0)) fail("bandwidth_hz must be positive");
  return err.str();
}

void validate_config(const NetworkConfig& cfg) {
  const std::string errs = validation_errors(cfg);
  if (!errs.empty()) throw std::invalid_argument(errs);
}

double lognormal_delta_moment(double sigma_db, double delta) {
  if (sigma_db < 0.0)
    throw std::domain_error("lognormal_delta_moment: sigma_db >= 0 required");
  const double beta = delta * sigma_db * std::numbers::ln10 / 10.0;
  return std::exp(0.5 * beta * beta);
}

DerivedConstants derive_constants(const NetworkConfig& cfg) {
  validate_config(cfg);
  const std::size_t n = cfg.tiers.size();
  DerivedConstants dc;
  dc.delta = 2.0 / cfg.alpha;
  dc.s_moment = lognormal_delta_moment(cfg.shadow_sigma_db, dc.delta);

  dc.ul_weight.resize(n);
  dc.dl_weight.resize(n);
  double max_ul = 0.0, max_dl = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    max_ul = std::max(max_ul, cfg.tiers[k].ul_weight);
    max_dl = std::max(max_dl, cfg.tiers[k].dl_weight);
  }
  for (std::size_t k = 0; k < n; ++k) {
    dc.ul_weight[k] = cfg.tiers[k].ul_weight / max_ul;
    dc.dl_weight[k] = cfg.tiers[k].dl_weight / max_dl;
  }

  dc.a.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    dc.a[k] = cfg.tiers[k].density * std::numbers::pi * dc.s_moment;

  auto accumulate_g = [&](const std::vector<double>& w) {
    std::vector<double> g(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j)
        g[k] += dc.a[j] * std::pow(w[j] / w[k], dc.delta);
    return g;
  };
  dc.g_ul = accumulate_g(dc.ul_weight);
  dc.g_dl = accumulate_g(dc.dl_weight);

  dc.assoc_ul.resize(n);
  dc.assoc_dl.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    dc.assoc_ul[k] = dc.a[k] / dc.g_ul[k];
    dc.assoc_dl[k] = dc.a[k] / dc.g_dl[k];
  }
  return dc;
}

Model make_model(const NetworkConfig& cfg) {
  return Model{cfg, derive_constants(cfg)};
}

}  // namespace hcncov
