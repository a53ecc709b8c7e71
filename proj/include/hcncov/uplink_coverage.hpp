#pragma once

#include <functional>

#include "hcncov/parallel.hpp"
#include "hcncov/types.hpp"

namespace hcncov {

enum class LoadModel { full_pmf, mean_load };

// Laplace transform of the uplink interference at a tagged AP of tier k,
// evaluated at s >= 0. Always in (0, 1].
double laplace_ul_interference(const Model& m, double s, std::size_t k,
                               const QuadratureSpec& q = {});

// P(SIR > tau | serving tier = k), noise-free.
double cond_sir_coverage(const Model& m, double tau, std::size_t k,
                         const QuadratureSpec& q = {});

// Uplink SIR coverage probability (noise-free).
double sir_coverage(const Model& m, double tau, const QuadratureSpec& q = {});

// Uplink SINR coverage probability including the thermal noise term.
double sinr_coverage(const Model& m, double tau, const QuadratureSpec& q = {});

// Closed form for full channel inversion (pcf = 1); throws if pcf != 1.
double sir_coverage_closed_eps1(const Model& m, double tau);

// Single-integral upper bound; coincides with the exact value at pcf = 1.
double sir_coverage_upper(const Model& m, double tau,
                          const QuadratureSpec& q = {});

// Closed-form lower bound. The eps(1-eps)/sin(pi eps) factor is continued to
// 1/pi at eps in {0,1}.
double sir_coverage_lower(const Model& m, double tau);

// Downlink SIR coverage reference 1 / (1 + delta tau/(1-delta) * kernel(tau)).
double downlink_sir_reference(double tau, double delta);

// Uplink rate coverage P(rate > rho) for rho in bit/s, with the cell load
// either summed over its PMF or replaced by its mean.
double rate_coverage(const Model& m, double rho, LoadModel load,
                     const QuadratureSpec& q = {});

// Ablated analyses. a1 drops the interferer transmit-power conditioning;
// a2 additionally drops the inhomogeneous thinning of the interferer process.
double sir_coverage_a1(const Model& m, double tau, const QuadratureSpec& q = {});
double sir_coverage_a2(const Model& m, double tau, const QuadratureSpec& q = {});

// Evaluates f over a threshold grid, optionally in parallel; the output
// ordering (and bit pattern) is independent of the execution policy.
CoverageCurve evaluate_curve(const std::function<double(double)>& f,
                             const std::vector<double>& thresholds,
                             Provenance provenance,
                             const std::string& fingerprint = "",
                             Exec exec = Exec::parallel);

// Log-spaced threshold grid between two dB endpoints (inclusive).
std::vector<double> db_grid(double lo_db, double hi_db, std::size_t points);

}  // namespace hcncov
