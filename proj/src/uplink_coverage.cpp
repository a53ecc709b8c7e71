#include "hcncov/uplink_coverage.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hcncov/distributions.hpp"
#include "hcncov/special_math.hpp"

namespace hcncov {

namespace {

constexpr double kPi = std::numbers::pi;

// Conditional expectation E[L^{delta-(1-eps)} * kernel(c / L^{1-eps}) | tier j]
// against the tier-conditional law, written with v = G_j * L^delta so the
// weight is a unit exponential:
//   int_0^inf (v/G_j)^{1-q} * kernel(c * (v/G_j)^{-q}) * e^{-v} dv,
// where q = (1-eps)/delta. The integrand stays bounded near v = 0 because the
// kernel decays like x^{delta-1}.
double cond_kernel_moment(double c, double gj, double q, double delta,
                          const QuadratureSpec& quad) {
  auto f = [&](double v) {
    const double lv = v / gj;
    const double scale = (q == 0.0) ? 1.0 : std::exp(-q * std::log(lv));
    return lv * scale * hyp2f1_kernel(c * scale, delta) * std::exp(-v);
  };
  return integrate_semi_infinite(f, quad);
}

// Shared driver for the exact conditional coverage and its variants. The
// exponent callback maps (tau, l) to the interference exponent.
template <typename ExponentFn>
double cond_coverage_integral(const Model& m, double tau, std::size_t k,
                              double inv_snr, const ExponentFn& expo,
                              const QuadratureSpec& q) {
  const double delta = m.dc.delta;
  const double gk = m.dc.g_ul[k];
  const double eps = m.cfg.pcf;
  auto f = [&](double u) {
    const double l = std::pow(u / gk, 1.0 / delta);
    const double lp = std::pow(l, 1.0 - eps);
    double e = expo(tau, l, lp);
    if (inv_snr > 0.0) e += tau * lp * inv_snr;
    return std::exp(-u - e);
  };
  return integrate_semi_infinite(f, q);
}

// Interference exponent of the exact analysis for tagged tier k:
//   delta/(1-delta) * tau * l^{1-eps}
//     * sum_j nu_j^{1-delta} a_j E_j(tau nu_j l^{1-eps}).
double exact_exponent(const Model& m, std::size_t k, double tau, double lp,
                      const QuadratureSpec& q) {
  const double delta = m.dc.delta;
  const double eps = m.cfg.pcf;
  const double qq = (1.0 - eps) / delta;
  const auto& w = m.dc.ul_weight;
  double sum = 0.0;
  for (std::size_t j = 0; j < m.dc.num_tiers(); ++j) {
    const double nu = w[j] / w[k];
    sum += std::pow(nu, 1.0 - delta) * m.dc.a[j] *
           cond_kernel_moment(tau * nu * lp, m.dc.g_ul[j], qq, delta, q);
  }
  return delta / (1.0 - delta) * tau * lp * sum;
}

double coverage_sum(const Model& m, double tau, double inv_snr,
                    const QuadratureSpec& q) {
  if (!(tau > 0.0)) return 1.0;
  QuadratureSpec inner = q;
  inner.rel_tol = std::min(1e-9, q.rel_tol);
  double total = 0.0;
  for (std::size_t k = 0; k < m.dc.num_tiers(); ++k) {
    auto expo = [&](double t, double /*l*/, double lp) {
      return exact_exponent(m, k, t, lp, inner);
    };
    total += m.dc.assoc_ul[k] *
             cond_coverage_integral(m, tau, k, inv_snr, expo, q);
  }
  return total;
}

}  // namespace

double laplace_ul_interference(const Model& m, double s, std::size_t k,
                               const QuadratureSpec& q) {
  if (s < 0.0)
    throw std::domain_error("laplace_ul_interference: s >= 0 required");
  if (s == 0.0) return 1.0;
  const double delta = m.dc.delta;
  const double eps = m.cfg.pcf;
  const double qq = (1.0 - eps) / delta;
  const auto& w = m.dc.ul_weight;
  double sum = 0.0;
  for (std::size_t j = 0; j < m.dc.num_tiers(); ++j) {
    const double nu = w[j] / w[k];
    sum += std::pow(nu, 1.0 - delta) * m.dc.a[j] *
           cond_kernel_moment(s * nu, m.dc.g_ul[j], qq, delta, q);
  }
  return std::exp(-delta / (1.0 - delta) * s * sum);
}

double cond_sir_coverage(const Model& m, double tau, std::size_t k,
                         const QuadratureSpec& q) {
  if (!(tau > 0.0)) return 1.0;
  QuadratureSpec inner = q;
  inner.rel_tol = std::min(1e-9, q.rel_tol);
  auto expo = [&](double t, double /*l*/, double lp) {
    return exact_exponent(m, k, t, lp, inner);
  };
  return cond_coverage_integral(m, tau, k, 0.0, expo, q);
}

double sir_coverage(const Model& m, double tau, const QuadratureSpec& q) {
  return coverage_sum(m, tau, 0.0, q);
}

double sinr_coverage(const Model& m, double tau, const QuadratureSpec& q) {
  return coverage_sum(m, tau, 1.0 / m.cfg.snr_linear(), q);
}

double sir_coverage_closed_eps1(const Model& m, double tau) {
  if (m.cfg.pcf != 1.0)
    throw std::invalid_argument("sir_coverage_closed_eps1 requires pcf = 1");
  if (!(tau > 0.0)) return 1.0;
  const double delta = m.dc.delta;
  const auto& w = m.dc.ul_weight;
  double total = 0.0;
  for (std::size_t k = 0; k < m.dc.num_tiers(); ++k) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m.dc.num_tiers(); ++j) {
      const double nu = w[j] / w[k];
      sum += std::pow(nu, 1.0 - delta) * m.dc.assoc_ul[j] *
             hyp2f1_kernel(tau * nu, delta);
    }
    total +=
        m.dc.assoc_ul[k] * std::exp(-delta / (1.0 - delta) * tau * sum);
  }
  return total;
}

double sir_coverage_upper(const Model& m, double tau, const QuadratureSpec& q) {
  if (!(tau > 0.0)) return 1.0;
  const double delta = m.dc.delta;
  const double eps = m.cfg.pcf;
  const double qq = (1.0 - eps) / delta;
  const double gamma2 = std::tgamma(2.0 + qq);
  const auto& w = m.dc.ul_weight;
  double total = 0.0;
  for (std::size_t k = 0; k < m.dc.num_tiers(); ++k) {
    auto expo = [&](double t, double /*l*/, double lp) {
      double sum = 0.0;
      for (std::size_t j = 0; j < m.dc.num_tiers(); ++j) {
        const double nu = w[j] / w[k];
        const double gq = std::pow(m.dc.g_ul[j], qq);
        sum += std::pow(nu, 1.0 - delta) * m.dc.a[j] * gq / m.dc.g_ul[j] *
               hyp2f1_kernel(t * nu * lp * gq / gamma2, delta);
      }
      return delta / (1.0 - delta) * t * lp / gamma2 * sum;
    };
    total += m.dc.assoc_ul[k] *
             cond_coverage_integral(m, tau, k, 0.0, expo, q);
  }
  return total;
}

double sir_coverage_lower(const Model& m, double tau) {
  if (!(tau > 0.0)) return 1.0;
  const double delta = m.dc.delta;
  const double eps = m.cfg.pcf;
  // eps(1-eps)/sin(pi eps) -> 1/pi at both endpoints.
  const double factor =
      (eps <= 0.0 || eps >= 1.0) ? 1.0 / kPi
                                 : eps * (1.0 - eps) / std::sin(kPi * eps);
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t k = 0; k < m.dc.num_tiers(); ++k) {
    s1 += m.dc.a[k] / std::pow(m.dc.g_ul[k], 2.0 - eps);
    s2 += m.dc.a[k] / std::pow(m.dc.g_ul[k], eps);
  }
  const double expo = std::pow(tau, delta) * kPi * kPi * delta * factor /
                      std::sin(kPi * delta) * s1 * s2;
  return std::exp(-expo);
}

double downlink_sir_reference(double tau, double delta) {
  if (!(tau > 0.0)) return 1.0;
  return 1.0 /
         (1.0 + delta * tau / (1.0 - delta) * hyp2f1_kernel(tau, delta));
}

double rate_coverage(const Model& m, double rho, LoadModel load,
                     const QuadratureSpec& q) {
  if (!(rho > 0.0)) return 1.0;
  const double rho_hat =
      rho / (m.cfg.uplink_fraction * m.cfg.bandwidth_hz);
  double total = 0.0;
  for (std::size_t k = 0; k < m.dc.num_tiers(); ++k) {
    const double ak = m.dc.assoc_ul[k];
    if (load == LoadModel::mean_load) {
      const double n_bar = mean_load(m, k, Link::uplink);
      const double e = rho_hat * n_bar;
      if (e > 500.0) continue;  // coverage is numerically zero
      total += ak * cond_sir_coverage(m, std::exp2(e) - 1.0, k, q);
    } else {
      const LoadPmf pmf = load_pmf(m, k, Link::uplink);
      for (std::size_t i = 0; i < pmf.pmf.size(); ++i) {
        const double e = rho_hat * static_cast<double>(i + 1);
        if (e > 500.0) break;
        const double p = pmf.pmf[i];
        if (p < 1e-12) continue;
        total += ak * p * cond_sir_coverage(m, std::exp2(e) - 1.0, k, q);
      }
    }
  }
  return total;
}

namespace {

// Thinned interference integral of the ablated analyses, in the u = x^delta
// variable: J(c; g) = int_0^inf (1 - e^{-g w}) / (1 + w^{1/delta}/c) dw.
double thinned_interference_integral(double c, double g, double delta,
                                     const QuadratureSpec& q) {
  const double p = 1.0 / delta;
  auto f = [&](double w) {
    return -std::expm1(-g * w) / (1.0 + std::pow(w, p) / c);
  };
  return integrate_semi_infinite(f, q);
}

}  // namespace

double sir_coverage_a1(const Model& m, double tau, const QuadratureSpec& q) {
  if (!(tau > 0.0)) return 1.0;
  const double delta = m.dc.delta;
  const double eps = m.cfg.pcf;
  QuadratureSpec inner = q;
  inner.rel_tol = 1e-7;
  inner.abs_tol = 1e-10;
  double total = 0.0;
  for (std::size_t k = 0; k < m.dc.num_tiers(); ++k) {
    const double gk = m.dc.g_ul[k];
    auto expo = [&](double t, double /*l*/, double lp) {
      const double s = t * lp;
      double sum = 0.0;
      for (std::size_t j = 0; j < m.dc.num_tiers(); ++j) {
        const double gj = m.dc.g_ul[j];
        auto over_l = [&](double v) {
          const double le = std::pow(v / gj, eps / delta);
          return std::exp(-v) *
                 thinned_interference_integral(s * le, gk, delta, inner);
        };
        sum += m.dc.a[j] * integrate_semi_infinite(over_l, inner);
      }
      return sum;
    };
    total += m.dc.assoc_ul[k] *
             cond_coverage_integral(m, tau, k, 0.0, expo, q);
  }
  return total;
}

double sir_coverage_a2(const Model& m, double tau, const QuadratureSpec& q) {
  if (!(tau > 0.0)) return 1.0;
  const double delta = m.dc.delta;
  const double eps = m.cfg.pcf;
  const double front = kPi * delta / std::sin(kPi * delta) *
                       std::tgamma(1.0 + eps);
  double moment_sum = 0.0;
  for (std::size_t j = 0; j < m.dc.num_tiers(); ++j)
    moment_sum += m.dc.a[j] / std::pow(m.dc.g_ul[j], eps);
  double total = 0.0;
  for (std::size_t k = 0; k < m.dc.num_tiers(); ++k) {
    auto expo = [&](double t, double /*l*/, double lp) {
      return front * std::pow(t * lp, delta) * moment_sum;
    };
    total += m.dc.assoc_ul[k] *
             cond_coverage_integral(m, tau, k, 0.0, expo, q);
  }
  return total;
}

CoverageCurve evaluate_curve(const std::function<double(double)>& f,
                             const std::vector<double>& thresholds,
                             Provenance provenance,
                             const std::string& fingerprint, Exec exec) {
  CoverageCurve curve;
  curve.thresholds = thresholds;
  curve.values.resize(thresholds.size());
  curve.provenance = provenance;
  curve.fingerprint = fingerprint;
  parallel_for(thresholds.size(), exec,
               [&](std::size_t i) { curve.values[i] = f(thresholds[i]); });
  return curve;
}

std::vector<double> db_grid(double lo_db, double hi_db, std::size_t points) {
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double db =
        lo_db + (hi_db - lo_db) * static_cast<double>(i) /
                    static_cast<double>(points > 1 ? points - 1 : 1);
    grid[i] = db_to_linear(db);
  }
  return grid;
}

}  // namespace hcncov
