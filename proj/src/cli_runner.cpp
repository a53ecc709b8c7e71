#include "hcncov/cli_runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hcncov/config_io.hpp"
#include "hcncov/joint_coverage.hpp"
#include "hcncov/network.hpp"
#include "hcncov/simulator.hpp"
#include "hcncov/special_math.hpp"
#include "hcncov/sweep_engine.hpp"
#include "hcncov/uplink_coverage.hpp"

namespace hcncov {

namespace {

namespace fs = std::filesystem;

// "lo:hi:n" -> n points, linearly spaced in the given unit
std::vector<double> parse_grid_spec(const std::string& spec) {
  std::istringstream ss(spec);
  std::string a, b, c;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') ||
      !std::getline(ss, c, ':'))
    throw std::invalid_argument("grid spec must be lo:hi:points, got " + spec);
  const double lo = std::stod(a), hi = std::stod(b);
  const int n = std::stoi(c);
  if (n < 1) throw std::invalid_argument("empty grid");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = lo + (hi - lo) * (n > 1 ? static_cast<double>(i) / (n - 1) : 0.0);
  return g;
}

std::vector<double> log_rate_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = lo * std::pow(hi / lo, n > 1 ? static_cast<double>(i) / (n - 1) : 0.0);
  return g;
}

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
};

RunManifest begin_manifest(const std::string& command, const Model& m,
                           std::uint64_t seed) {
  RunManifest mf;
  mf.command = command;
  mf.config_fingerprint = config_fingerprint(m.cfg);
  mf.seed = seed;
  mf.tool_version = tool_version();
  mf.started_at = iso_timestamp();
  return mf;
}

void finish_manifest(RunManifest& mf, const fs::path& dir) {
  mf.finished_at = iso_timestamp();
  const fs::path p = dir / "manifest.json";
  write_manifest(p, mf);
}

int cmd_analyze(const CommonArgs& common, const std::string& curves,
                const std::string& grid_spec, const std::string& rate_spec) {
  const Model m = make_model(load_config(common.config_path));
  const std::string fp = config_fingerprint(m.cfg);
  fs::create_directories(common.out_dir);
  RunManifest mf = begin_manifest("analyze", m, common.seed);

  std::vector<double> tau_grid;
  {
    auto dbs = parse_grid_spec(grid_spec);
    if (dbs.empty()) throw std::invalid_argument("empty grid");
    for (double db : dbs) tau_grid.push_back(db_to_linear(db));
  }

  std::istringstream cs(curves);
  std::string item;
  while (std::getline(cs, item, ',')) {
    const fs::path out = fs::path(common.out_dir) / (item + ".csv");
    if (item == "sir") {
      auto c = evaluate_curve([&](double t) { return sir_coverage(m, t); },
                              tau_grid, Provenance::exact, fp);
      write_curve_csv(out, c, false);
    } else if (item == "sinr") {
      auto c = evaluate_curve([&](double t) { return sinr_coverage(m, t); },
                              tau_grid, Provenance::exact, fp);
      write_curve_csv(out, c, false);
    } else if (item == "bounds") {
      auto up = evaluate_curve(
          [&](double t) { return sir_coverage_upper(m, t); }, tau_grid,
          Provenance::upper_bound, fp);
      auto lo = evaluate_curve(
          [&](double t) { return sir_coverage_lower(m, t); }, tau_grid,
          Provenance::lower_bound, fp);
      auto ex = evaluate_curve([&](double t) { return sir_coverage(m, t); },
                               tau_grid, Provenance::exact, fp);
      write_curve_csv(fs::path(common.out_dir) / "sir_upper.csv", up, false);
      write_curve_csv(fs::path(common.out_dir) / "sir_lower.csv", lo, false);
      write_curve_csv(fs::path(common.out_dir) / "sir_exact.csv", ex, false);
      mf.outputs.push_back("sir_upper.csv");
      mf.outputs.push_back("sir_lower.csv");
      mf.outputs.push_back("sir_exact.csv");
      continue;
    } else if (item == "rate") {
      auto rates = parse_grid_spec(rate_spec);
      std::vector<double> rg(rates.begin(), rates.end());
      auto c = evaluate_curve(
          [&](double r) { return rate_coverage(m, r, LoadModel::mean_load); },
          rg, Provenance::exact, fp);
      write_curve_csv(out, c, true);
    } else if (item == "joint") {
      auto rates = parse_grid_spec(rate_spec);
      std::vector<JointSurfacePoint> pts;
      for (double r : rates)
        pts.push_back({r, r, joint_rate_coverage(m, r, r)});
      write_joint_csv(out, pts, fp);
    } else {
      throw std::invalid_argument("unknown curve kind: " + item);
    }
    mf.outputs.push_back(item + ".csv");
  }
  finish_manifest(mf, common.out_dir);
  return 0;
}

int cmd_simulate(const CommonArgs& common, std::size_t trials,
                 const std::string& mode, double window,
                 const std::string& grid_spec) {
  const Model m = make_model(load_config(common.config_path));
  const std::string fp = config_fingerprint(m.cfg);
  fs::create_directories(common.out_dir);
  RunManifest mf = begin_manifest("simulate", m, common.seed);
  SimOptions opt;
  opt.seed = common.seed;
  opt.window_km = window;

  std::vector<double> tau_grid;
  for (double db : parse_grid_spec(grid_spec))
    tau_grid.push_back(db_to_linear(db));

  const fs::path samples_path = fs::path(common.out_dir) / "samples.csv";
  std::ofstream samples(samples_path);
  samples << "# config_fingerprint=" << fp << " seed=" << common.seed
          << " trials=" << trials << " mode=" << mode << "\n";
  samples << std::setprecision(10);

  if (mode == "sinr") {
    auto batch = run_sinr_batch(m, trials, {m.cfg.pcf}, opt);
    samples << "ul_sinr_db,ul_tier\n";
    for (std::size_t t = 0; t < trials; ++t)
      samples << linear_to_db(batch.samples[0][t]) << ','
              << batch.serving_tier[t] + 1 << "\n";
    auto ccdf = empirical_ccdf(batch.samples[0], tau_grid);
    CoverageCurve c;
    c.thresholds = tau_grid;
    c.values = ccdf.value;
    c.provenance = Provenance::simulation;
    c.fingerprint = fp;
    write_curve_csv(fs::path(common.out_dir) / "sinr_ccdf.csv", c, false,
                    ccdf.wilson_halfwidth);
    mf.outputs.push_back("sinr_ccdf.csv");
  } else if (mode == "rate" || mode == "joint") {
    RateBatch batch = mode == "rate" ? run_rate_batch(m, trials, opt)
                                     : run_joint_batch(m, trials, opt);
    samples << "ul_sinr_db,ul_rate_bps,dl_rate_bps,ul_tier,dl_tier\n";
    for (std::size_t t = 0; t < trials; ++t) {
      samples << linear_to_db(batch.ul_sinr[t]) << ',' << batch.ul_rate[t]
              << ',' << (mode == "joint" ? batch.dl_rate[t] : 0.0) << ','
              << batch.ul_tier[t] + 1 << ','
              << (mode == "joint" ? batch.dl_tier[t] + 1 : 0) << "\n";
    }
    auto rate_grid = log_rate_grid(1e4, 1e7, 31);
    auto ccdf = empirical_ccdf(batch.ul_rate, rate_grid);
    CoverageCurve c;
    c.thresholds = rate_grid;
    c.values = ccdf.value;
    c.provenance = Provenance::simulation;
    c.fingerprint = fp;
    write_curve_csv(fs::path(common.out_dir) / "ul_rate_ccdf.csv", c, true,
                    ccdf.wilson_halfwidth);
    mf.outputs.push_back("ul_rate_ccdf.csv");
  } else {
    throw std::invalid_argument("unknown mode: " + mode);
  }
  mf.outputs.push_back("samples.csv");
  finish_manifest(mf, common.out_dir);
  return 0;
}

int cmd_validate(const CommonArgs& common, std::size_t trials, double window) {
  const Model m = make_model(load_config(common.config_path));
  const std::string fp = config_fingerprint(m.cfg);
  fs::create_directories(common.out_dir);
  RunManifest mf = begin_manifest("validate", m, common.seed);

  std::vector<double> tau_grid = db_grid(-10.0, 20.0, 31);
  SimOptions opt;
  opt.seed = common.seed;
  opt.window_km = window;

  auto exact = evaluate_curve([&](double t) { return sir_coverage(m, t); },
                              tau_grid, Provenance::exact, fp);
  auto batch = run_sinr_batch(m, trials, {m.cfg.pcf}, opt);
  auto sim = empirical_ccdf(batch.samples[0], tau_grid);

  double sup = 0.0;
  for (std::size_t i = 0; i < tau_grid.size(); ++i)
    sup = std::max(sup, std::abs(exact.values[i] - sim.value[i]));
  const bool pass = sup <= 0.02;
  std::cout << (pass ? "PASS" : "FAIL")
            << " sir_analysis_vs_simulation max_abs_dev=" << sup
            << " (tolerance 0.02, trials=" << trials << ")\n";

  // ablations (informational: they are expected to diverge)
  double sup_a1 = 0.0, sup_a2 = 0.0;
  for (std::size_t i = 0; i < tau_grid.size(); i += 3) {
    sup_a1 = std::max(
        sup_a1, std::abs(sir_coverage_a1(m, tau_grid[i]) - sim.value[i]));
    sup_a2 = std::max(
        sup_a2, std::abs(sir_coverage_a2(m, tau_grid[i]) - sim.value[i]));
  }
  std::cout << "INFO ablation_deviation a1=" << sup_a1 << " a2=" << sup_a2
            << " (intentionally divergent)\n";

  write_curve_csv(fs::path(common.out_dir) / "validate_exact.csv", exact,
                  false);
  CoverageCurve simc;
  simc.thresholds = tau_grid;
  simc.values = sim.value;
  simc.provenance = Provenance::simulation;
  simc.fingerprint = fp;
  write_curve_csv(fs::path(common.out_dir) / "validate_sim.csv", simc, false,
                  sim.wilson_halfwidth);
  mf.outputs.push_back("validate_exact.csv");
  mf.outputs.push_back("validate_sim.csv");
  finish_manifest(mf, common.out_dir);
  return pass ? 0 : 1;
}

int cmd_sweep(const CommonArgs& common, const std::string& metric,
              const std::string& eps_spec, const std::string& ul_spec,
              const std::string& dl_spec, const std::string& thresh_spec,
              double rate_threshold) {
  const Model m = make_model(load_config(common.config_path));
  const std::string fp = config_fingerprint(m.cfg);
  fs::create_directories(common.out_dir);
  RunManifest mf = begin_manifest("sweep", m, common.seed);

  SweepGrid grid;
  grid.epsilon_values = parse_grid_spec(eps_spec);
  grid.ul_weight_ratio_db = parse_grid_spec(ul_spec);
  grid.dl_weight_ratio_db = parse_grid_spec(dl_spec);
  if (metric == "sir_coverage") {
    grid.metric = SweepMetric::sir_coverage;
    for (double db : parse_grid_spec(thresh_spec))
      grid.thresholds.push_back(db_to_linear(db));
  } else if (metric == "edge_rate") {
    grid.metric = SweepMetric::edge_rate;
  } else if (metric == "median_rate") {
    grid.metric = SweepMetric::median_rate;
  } else if (metric == "joint_coverage") {
    grid.metric = SweepMetric::joint_coverage;
    grid.thresholds = {rate_threshold};
  } else if (metric == "joint_edge_rate") {
    grid.metric = SweepMetric::joint_edge_rate;
  } else if (metric == "joint_median_rate") {
    grid.metric = SweepMetric::joint_median_rate;
  } else {
    throw std::invalid_argument("unknown metric: " + metric);
  }

  const SweepResult result = weight_sweep(m, grid);
  const fs::path out = fs::path(common.out_dir) / "sweep.csv";
  std::ofstream os(out);
  os << "# config_fingerprint=" << fp << "\n";
  os << std::setprecision(12);
  os << "epsilon,ul_ratio_db,dl_ratio_db,threshold,value\n";
  for (const auto& p : result.points)
    os << p.epsilon << ',' << p.ul_ratio_db << ',' << p.dl_ratio_db << ','
       << p.threshold << ',' << p.value << "\n";
  const fs::path argmax_path = fs::path(common.out_dir) / "sweep_argmax.csv";
  std::ofstream as(argmax_path);
  as << "metric,epsilon,ul_ratio_db,dl_ratio_db,threshold,value\n";
  as << to_string(grid.metric) << ',' << result.argmax.epsilon << ','
     << result.argmax.ul_ratio_db << ',' << result.argmax.dl_ratio_db << ','
     << result.argmax.threshold << ',' << result.argmax.value << "\n";
  mf.outputs.push_back("sweep.csv");
  mf.outputs.push_back("sweep_argmax.csv");
  finish_manifest(mf, common.out_dir);
  std::cout << "argmax: eps=" << result.argmax.epsilon
            << " ul_db=" << result.argmax.ul_ratio_db
            << " dl_db=" << result.argmax.dl_ratio_db
            << " value=" << result.argmax.value << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Uplink and joint uplink-downlink coverage analysis for "
               "multi-tier cellular networks"};
  app.require_subcommand(1);

  CommonArgs common;
  std::string curves = "sir";
  std::string grid_spec = "-20:30:61";
  std::string rate_spec = "1e4:1e7:31";
  std::string mode = "sinr";
  std::size_t trials = 100000;
  double window = 0.0;
  std::string metric = "sir_coverage";
  std::string eps_spec = "0:1:21";
  std::string ul_spec = "-20:6:14";
  std::string dl_spec = "-20:6:14";
  std::string thresh_spec = "0:0:1";
  double rate_threshold = 128e3;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "config JSON path")
        ->required();
    sub->add_option("--out", common.out_dir, "output directory");
    sub->add_option("--seed", common.seed, "random seed");
  };

  auto* analyze = app.add_subcommand("analyze", "analytical curves to CSV");
  add_common(analyze);
  analyze->add_option("--curves", curves,
                      "comma list: sir,sinr,bounds,rate,joint");
  analyze->add_option("--grid", grid_spec, "threshold grid lo_db:hi_db:points");
  analyze->add_option("--rate-grid", rate_spec, "rate grid lo:hi:points (bit/s)");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo batch to CSV");
  add_common(simulate);
  simulate->add_option("--trials", trials, "number of independent trials");
  simulate->add_option("--mode", mode, "sinr | rate | joint");
  simulate->add_option("--window", window, "window side in km (0 = auto)");
  simulate->add_option("--grid", grid_spec, "threshold grid lo_db:hi_db:points");

  auto* validate =
      app.add_subcommand("validate", "analysis vs simulation closure report");
  add_common(validate);
  validate->add_option("--trials", trials, "number of independent trials");
  validate->add_option("--window", window, "window side in km (0 = auto)");

  auto* sweep = app.add_subcommand("sweep", "parameter sweeps to CSV");
  add_common(sweep);
  sweep->add_option("--metric", metric,
                    "sir_coverage|edge_rate|median_rate|joint_coverage|"
                    "joint_edge_rate|joint_median_rate");
  sweep->add_option("--eps-grid", eps_spec, "pcf grid lo:hi:points");
  sweep->add_option("--ul-grid", ul_spec, "UL weight ratio grid (dB) lo:hi:points");
  sweep->add_option("--dl-grid", dl_spec, "DL weight ratio grid (dB) lo:hi:points");
  sweep->add_option("--tau-grid", thresh_spec, "SIR threshold grid (dB)");
  sweep->add_option("--rate-threshold", rate_threshold,
                    "rate threshold for joint_coverage (bit/s)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (app.got_subcommand(analyze))
      return cmd_analyze(common, curves, grid_spec, rate_spec);
    if (app.got_subcommand(simulate))
      return cmd_simulate(common, trials, mode, window, grid_spec);
    if (app.got_subcommand(validate))
      return cmd_validate(common, trials, window);
    if (app.got_subcommand(sweep))
      return cmd_sweep(common, metric, eps_spec, ul_spec, dl_spec, thresh_spec,
                       rate_threshold);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace hcncov
