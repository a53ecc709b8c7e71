#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hcncov/types.hpp"

namespace hcncov {

enum class SweepMetric {
  sir_coverage,
  edge_rate,
  median_rate,
  joint_coverage,
  joint_edge_rate,
  joint_median_rate,
};

std::string to_string(SweepMetric metric);

struct SweepGrid {
  std::vector<double> epsilon_values;        // in [0,1]
  std::vector<double> ul_weight_ratio_db;    // tier-2 weight relative to tier 1
  std::vector<double> dl_weight_ratio_db;
  std::vector<double> thresholds;            // SIR (linear) or rate (bit/s)
  SweepMetric metric = SweepMetric::sir_coverage;
};

struct SweepPoint {
  double epsilon = 0.0;
  double ul_ratio_db = 0.0;
  double dl_ratio_db = 0.0;
  double threshold = 0.0;
  double value = 0.0;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  SweepPoint argmax;
};

// Maximizer of a scalar function over a grid, refined by one golden-section
// pass inside the bracketing cell.
struct ScalarOptimum {
  double x = 0.0;
  double value = 0.0;
};
ScalarOptimum maximize_on_grid(const std::function<double(double)>& f,
                               const std::vector<double>& grid,
                               bool golden_refine = true);

// PCF maximizing SIR coverage at threshold tau.
ScalarOptimum optimal_pcf(const Model& m, double tau,
                          const std::vector<double>& eps_grid);

// Rate rho solving coverage(rho) = q by bisection (coverage decreasing in
// rho). objective: "ul" uses the mean-load rate coverage, "joint" uses the
// diagonal joint rate coverage.
double percentile_rate(const Model& m, double q, const std::string& objective);

// Evaluates the grid metric at every point and reports the argmax.
SweepResult weight_sweep(const Model& m, const SweepGrid& grid);

// Best coupled (single shared ratio) vs. best decoupled weight pair for the
// joint metric at each pcf value.
struct CoupledVsDecoupledRow {
  double epsilon = 0.0;
  double coupled_ratio_db = 0.0;
  double decoupled_ul_db = 0.0;
  double decoupled_dl_db = 0.0;
  double coupled_edge_rate = 0.0;
  double decoupled_edge_rate = 0.0;
  double coupled_median_rate = 0.0;
  double decoupled_median_rate = 0.0;
};
std::vector<CoupledVsDecoupledRow> coupled_vs_decoupled(
    const Model& m, const std::vector<double>& eps_grid,
    const std::vector<double>& ratio_grid_db);

// Copy of the model with tier-2..K uplink/downlink weight ratios replaced
// (tier 1 weight fixed at 1). Only meaningful for two-tier sweeps.
Model with_weight_ratios(const Model& m, double ul_ratio_db,
                         double dl_ratio_db);
Model with_pcf(const Model& m, double eps);

}  // namespace hcncov
