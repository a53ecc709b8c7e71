#include "hcncov/joint_coverage.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hcncov/distributions.hpp"
#include "hcncov/special_math.hpp"
#include "hcncov/uplink_coverage.hpp"

namespace hcncov {

double laplace_dl_interference(const Model& m, double s, std::size_t j,
                               double l, const QuadratureSpec&) {
  if (s < 0.0)
    throw std::domain_error("laplace_dl_interference: s >= 0 required");
  if (!(l > 0.0))
    throw std::domain_error("laplace_dl_interference: l > 0 required");
  if (s == 0.0) return 1.0;
  const double delta = m.dc.delta;
  const auto& wd = m.dc.dl_weight;
  double sum = 0.0;
  for (std::size_t i = 0; i < m.dc.num_tiers(); ++i) {
    const double nu = wd[i] / wd[j];
    const double pi_ = m.cfg.tiers[i].tx_power;
    sum += m.dc.a[i] * pi_ * std::pow(nu, delta - 1.0) *
           hyp2f1_kernel(s * pi_ / (l * nu), delta);
  }
  return std::exp(-delta / (1.0 - delta) * s * std::pow(l, delta - 1.0) * sum);
}

double dl_sir_coverage(const Model& m, double tau, const QuadratureSpec& q) {
  if (!(tau > 0.0)) return 1.0;
  double total = 0.0;
  for (std::size_t j = 0; j < m.dc.num_tiers(); ++j) {
    const double gj = m.dc.g_dl[j];
    const double pj = m.cfg.tiers[j].tx_power;
    auto f = [&](double u) {
      const double l = std::pow(u / gj, 1.0 / m.dc.delta);
      return std::exp(-u) *
             laplace_dl_interference(m, tau * l / pj, j, l, q);
    };
    total += m.dc.assoc_dl[j] * integrate_semi_infinite(f, q);
  }
  return total;
}

namespace {

// Joint coverage with per-(k,j) thresholds; shared by the SIR and rate paths.
template <typename TauU, typename TauD>
double joint_coverage_impl(const Model& m, const TauU& tau_u,
                           const TauD& tau_d, const QuadratureSpec& q) {
  const std::size_t n = m.dc.num_tiers();
  const double delta = m.dc.delta;
  const double eps = m.cfg.pcf;
  const auto& w = m.dc.ul_weight;
  const auto& wd = m.dc.dl_weight;

  QuadratureSpec outer = q;
  outer.rel_tol = std::max(q.rel_tol, 1e-6);
  outer.abs_tol = std::max(q.abs_tol, 1e-9);
  QuadratureSpec inner = outer;

  double total = 0.0;

  auto ul_laplace = [&](std::size_t k, double tu, double x) {
    if (tu <= 0.0) return 1.0;
    if (!std::isfinite(tu)) return 0.0;
    return laplace_ul_interference(m, tu * std::pow(x, 1.0 - eps), k, inner);
  };
  auto dl_laplace = [&](std::size_t j, double td, double y) {
    if (td <= 0.0) return 1.0;
    if (!std::isfinite(td)) return 0.0;
    return laplace_dl_interference(
        m, td * y / m.cfg.tiers[j].tx_power, j, y, inner);
  };

  // Diagonal terms: UL and DL serve from the same tier at equal path loss.
  for (std::size_t k = 0; k < n; ++k) {
    const double tu = tau_u(k);
    const double td = tau_d(k);
    double coef = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      coef += m.dc.a[i] * std::pow(std::max(wd[i] / wd[k], w[i] / w[k]), delta);
    auto f = [&](double v) {
      const double x = std::pow(v / coef, 1.0 / delta);
      return std::exp(-v) * ul_laplace(k, tu, x) * dl_laplace(k, td, x);
    };
    total += m.dc.a[k] / coef * integrate_semi_infinite(f, outer);
  }

  // Wedge terms: distinct tiers; integrate over r = y/x (a rectangle in
  // (x, r) coordinates) with the x integral taken in u = x^delta.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      const double r_lo = w[j] / w[k];
      const double r_hi = wd[j] / wd[k];
      if (!(r_lo < r_hi)) continue;
      const double tu = tau_u(k);
      const double td = tau_d(j);
      auto over_r = [&](double r) {
        double qc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double cand = std::max(wd[i] / wd[j] * r, w[i] / w[k]);
          qc += m.dc.a[i] * std::pow(cand, delta);
        }
        auto over_u = [&](double u) {
          const double x = std::pow(u / qc, 1.0 / delta);
          return u * std::exp(-u) * ul_laplace(k, tu, x) *
                 dl_laplace(j, td, r * x);
        };
        return std::pow(r, delta - 1.0) / (qc * qc) *
               integrate_semi_infinite(over_u, outer);
      };
      total += m.dc.a[j] * m.dc.a[k] * delta *
               integrate_finite(over_r, r_lo, r_hi, outer);
    }
  }
  return total;
}

}  // namespace

double joint_sir_coverage(const Model& m, double tau_u, double tau_d,
                          const QuadratureSpec& q) {
  auto tu = [&](std::size_t) { return tau_u; };
  auto td = [&](std::size_t) { return tau_d; };
  return joint_coverage_impl(m, tu, td, q);
}

double joint_rate_coverage(const Model& m, double rho_u, double rho_d,
                           const QuadratureSpec& q) {
  const double w_ul = m.cfg.uplink_fraction * m.cfg.bandwidth_hz;
  const double w_dl = (1.0 - m.cfg.uplink_fraction) * m.cfg.bandwidth_hz;
  auto tu = [&](std::size_t k) {
    if (!(rho_u > 0.0)) return 0.0;
    const double e = rho_u / w_ul * mean_load(m, k, Link::uplink);
    return e > 500.0 ? std::numeric_limits<double>::infinity()
                     : std::exp2(e) - 1.0;
  };
  auto td = [&](std::size_t j) {
    if (!(rho_d > 0.0)) return 0.0;
    const double e = rho_d / w_dl * mean_load(m, j, Link::downlink);
    return e > 500.0 ? std::numeric_limits<double>::infinity()
                     : std::exp2(e) - 1.0;
  };
  return joint_coverage_impl(m, tu, td, q);
}

}  // namespace hcncov
