#include "hcncov/sweep_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hcncov/joint_coverage.hpp"
#include "hcncov/network.hpp"
#include "hcncov/parallel.hpp"
#include "hcncov/uplink_coverage.hpp"

namespace hcncov {

std::string to_string(SweepMetric metric) {
  switch (metric) {
    case SweepMetric::sir_coverage: return "sir_coverage";
    case SweepMetric::edge_rate: return "edge_rate";
    case SweepMetric::median_rate: return "median_rate";
    case SweepMetric::joint_coverage: return "joint_coverage";
    case SweepMetric::joint_edge_rate: return "joint_edge_rate";
    case SweepMetric::joint_median_rate: return "joint_median_rate";
  }
  return "unknown";
}

Model with_pcf(const Model& m, double eps) {
  NetworkConfig cfg = m.cfg;
  cfg.pcf = eps;
  return make_model(cfg);
}

Model with_weight_ratios(const Model& m, double ul_ratio_db,
                         double dl_ratio_db) {
  NetworkConfig cfg = m.cfg;
  for (std::size_t k = 1; k < cfg.tiers.size(); ++k) {
    cfg.tiers[k].ul_weight = cfg.tiers[0].ul_weight * db_to_linear(ul_ratio_db);
    cfg.tiers[k].dl_weight = cfg.tiers[0].dl_weight * db_to_linear(dl_ratio_db);
  }
  return make_model(cfg);
}

ScalarOptimum maximize_on_grid(const std::function<double(double)>& f,
                               const std::vector<double>& grid,
                               bool golden_refine) {
  if (grid.empty()) throw std::invalid_argument("empty grid");
  std::vector<double> values(grid.size());
  parallel_for(grid.size(), Exec::parallel,
               [&](std::size_t i) { values[i] = f(grid[i]); });
  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (values[i] > values[best]) best = i;

  ScalarOptimum out{grid[best], values[best]};
  if (!golden_refine || grid.size() < 2) return out;

  // golden-section pass within the bracketing cell
  double lo = grid[best > 0 ? best - 1 : best];
  double hi = grid[best + 1 < grid.size() ? best + 1 : best];
  if (!(hi > lo)) return out;
  const double phi = 0.6180339887498949;
  double x1 = hi - phi * (hi - lo);
  double x2 = lo + phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 24; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = f(x1);
    }
  }
  const double xm = 0.5 * (lo + hi);
  const double fm = f(xm);
  if (fm > out.value) out = {xm, fm};
  return out;
}

ScalarOptimum optimal_pcf(const Model& m, double tau,
                          const std::vector<double>& eps_grid) {
  auto f = [&](double eps) {
    const double clamped = std::clamp(eps, 0.0, 1.0);
    return sir_coverage(with_pcf(m, clamped), tau);
  };
  return maximize_on_grid(f, eps_grid);
}

namespace {

double coverage_objective(const Model& m, const std::string& objective,
                          double rho) {
  if (objective == "ul") return rate_coverage(m, rho, LoadModel::mean_load);
  if (objective == "joint") return joint_rate_coverage(m, rho, rho);
  throw std::invalid_argument("percentile_rate: unknown objective " +
                              objective);
}

}  // namespace

double percentile_rate(const Model& m, double q, const std::string& objective) {
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("percentile_rate: q must lie in (0,1)");
  // bracket the root of coverage(rho) = q
  double lo = 1e3;  // bit/s
  double hi = 1e6;
  double clo = coverage_objective(m, objective, lo);
  double chi = coverage_objective(m, objective, hi);
  int doublings = 0;
  while (clo < q) {
    hi = lo;
    chi = clo;
    lo *= 0.25;
    clo = coverage_objective(m, objective, lo);
    if (++doublings > 60)
      throw std::runtime_error("percentile_rate: no bracket (low side)");
  }
  while (chi > q) {
    hi *= 4.0;
    chi = coverage_objective(m, objective, hi);
    if (++doublings > 60)
      throw std::runtime_error("percentile_rate: no bracket (high side)");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    const double cm = coverage_objective(m, objective, mid);
    if (cm >= q)
      lo = mid;
    else
      hi = mid;
    if (hi / lo - 1.0 < 1e-4) break;
  }
  return std::sqrt(lo * hi);
}

SweepResult weight_sweep(const Model& m, const SweepGrid& grid) {
  if (grid.epsilon_values.empty() || grid.ul_weight_ratio_db.empty() ||
      grid.dl_weight_ratio_db.empty())
    throw std::invalid_argument("weight_sweep: empty grid");
  const bool needs_threshold = grid.metric == SweepMetric::sir_coverage ||
                               grid.metric == SweepMetric::joint_coverage;
  if (needs_threshold && grid.thresholds.empty())
    throw std::invalid_argument("weight_sweep: empty threshold grid");

  std::vector<SweepPoint> coords;
  for (double eps : grid.epsilon_values)
    for (double ul : grid.ul_weight_ratio_db)
      for (double dl : grid.dl_weight_ratio_db) {
        if (needs_threshold) {
          for (double th : grid.thresholds)
            coords.push_back({eps, ul, dl, th, 0.0});
        } else {
          coords.push_back({eps, ul, dl, 0.0, 0.0});
        }
      }

  SweepResult out;
  out.points.resize(coords.size());
  parallel_for(coords.size(), Exec::parallel, [&](std::size_t i) {
    SweepPoint p = coords[i];
    const Model mm =
        with_pcf(with_weight_ratios(m, p.ul_ratio_db, p.dl_ratio_db), p.epsilon);
    switch (grid.metric) {
      case SweepMetric::sir_coverage:
        p.value = sir_coverage(mm, p.threshold);
        break;
      case SweepMetric::edge_rate:
        p.value = percentile_rate(mm, 0.95, "ul");
        break;
      case SweepMetric::median_rate:
        p.value = percentile_rate(mm, 0.50, "ul");
        break;
      case SweepMetric::joint_coverage:
        p.value = joint_rate_coverage(mm, p.threshold, p.threshold);
        break;
      case SweepMetric::joint_edge_rate:
        p.value = percentile_rate(mm, 0.95, "joint");
        break;
      case SweepMetric::joint_median_rate:
        p.value = percentile_rate(mm, 0.50, "joint");
        break;
    }
    out.points[i] = p;
  });
  out.argmax = out.points.front();
  for (const auto& p : out.points)
    if (p.value > out.argmax.value) out.argmax = p;
  return out;
}

std::vector<CoupledVsDecoupledRow> coupled_vs_decoupled(
    const Model& m, const std::vector<double>& eps_grid,
    const std::vector<double>& ratio_grid_db) {
  std::vector<CoupledVsDecoupledRow> rows;
  for (double eps : eps_grid) {
    CoupledVsDecoupledRow row;
    row.epsilon = eps;

    // coupled: one shared ratio, optimized for the joint edge rate
    auto coupled_edge = [&](double ratio_db) {
      const Model mm = with_pcf(with_weight_ratios(m, ratio_db, ratio_db), eps);
      return percentile_rate(mm, 0.95, "joint");
    };
    std::size_t best_c = 0;
    std::vector<double> cvals(ratio_grid_db.size());
    parallel_for(ratio_grid_db.size(), Exec::parallel, [&](std::size_t i) {
      cvals[i] = coupled_edge(ratio_grid_db[i]);
    });
    for (std::size_t i = 1; i < ratio_grid_db.size(); ++i)
      if (cvals[i] > cvals[best_c]) best_c = i;
    row.coupled_ratio_db = ratio_grid_db[best_c];
    row.coupled_edge_rate = cvals[best_c];
    {
      const Model mm = with_pcf(
          with_weight_ratios(m, row.coupled_ratio_db, row.coupled_ratio_db),
          eps);
      row.coupled_median_rate = percentile_rate(mm, 0.50, "joint");
    }

    // decoupled: independent ratios. The joint coverage factorizes over the
    // two weights' influence, so optimize each axis around the coupled best.
    std::vector<double> uvals(ratio_grid_db.size());
    parallel_for(ratio_grid_db.size(), Exec::parallel, [&](std::size_t i) {
      const Model mm = with_pcf(
          with_weight_ratios(m, ratio_grid_db[i], row.coupled_ratio_db), eps);
      uvals[i] = percentile_rate(mm, 0.95, "joint");
    });
    std::size_t best_u = 0;
    for (std::size_t i = 1; i < ratio_grid_db.size(); ++i)
      if (uvals[i] > uvals[best_u]) best_u = i;
    row.decoupled_ul_db = ratio_grid_db[best_u];

    std::vector<double> dvals(ratio_grid_db.size());
    parallel_for(ratio_grid_db.size(), Exec::parallel, [&](std::size_t i) {
      const Model mm = with_pcf(
          with_weight_ratios(m, row.decoupled_ul_db, ratio_grid_db[i]), eps);
      dvals[i] = percentile_rate(mm, 0.95, "joint");
    });
    std::size_t best_d = 0;
    for (std::size_t i = 1; i < ratio_grid_db.size(); ++i)
      if (dvals[i] > dvals[best_d]) best_d = i;
    row.decoupled_dl_db = ratio_grid_db[best_d];
    row.decoupled_edge_rate = dvals[best_d];
    {
      const Model mm = with_pcf(
          with_weight_ratios(m, row.decoupled_ul_db, row.decoupled_dl_db), eps);
      row.decoupled_median_rate = percentile_rate(mm, 0.50, "joint");
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hcncov
