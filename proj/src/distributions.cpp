#include "hcncov/distributions.hpp"

#include <cmath>
#include <stdexcept>

#include "hcncov/special_math.hpp"

namespace hcncov {

namespace {

const std::vector<double>& g_of(const Model& m, Link link) {
  return link == Link::uplink ? m.dc.g_ul : m.dc.g_dl;
}

const std::vector<double>& w_of(const Model& m, Link link) {
  return link == Link::uplink ? m.dc.ul_weight : m.dc.dl_weight;
}

const std::vector<double>& assoc_of(const Model& m, Link link) {
  return link == Link::uplink ? m.dc.assoc_ul : m.dc.assoc_dl;
}

}  // namespace

double serving_pl_pdf(const Model& m, double l,
                      std::optional<std::size_t> tier, Link link) {
  if (l < 0.0) throw std::domain_error("serving_pl_pdf: l >= 0 required");
  if (l == 0.0) return 0.0;
  const double d = m.dc.delta;
  const auto& g = g_of(m, link);
  const double ld = std::pow(l, d);
  if (tier) {
    const double gk = g[*tier];
    return d * gk * std::pow(l, d - 1.0) * std::exp(-gk * ld);
  }
  double s = 0.0;
  for (std::size_t j = 0; j < m.dc.num_tiers(); ++j)
    s += m.dc.a[j] * std::exp(-g[j] * ld);
  return d * std::pow(l, d - 1.0) * s;
}

double serving_pl_ccdf(const Model& m, double l,
                       std::optional<std::size_t> tier, Link link) {
  if (l < 0.0) throw std::domain_error("serving_pl_ccdf: l >= 0 required");
  const double d = m.dc.delta;
  const auto& g = g_of(m, link);
  const auto& assoc = assoc_of(m, link);
  const double ld = std::pow(l, d);
  if (tier) return std::exp(-g[*tier] * ld);
  double s = 0.0;
  for (std::size_t j = 0; j < m.dc.num_tiers(); ++j)
    s += assoc[j] * std::exp(-g[j] * ld);
  return s;
}

double interferer_pl_pdf(const Model& m, double l, std::size_t j,
                         std::size_t k, double y) {
  if (y <= 0.0) throw std::domain_error("interferer_pl_pdf: y > 0 required");
  const double bound = m.dc.ul_weight[j] / m.dc.ul_weight[k] * y;
  if (l < 0.0 || l > bound) return 0.0;
  if (l == 0.0) return 0.0;
  const double d = m.dc.delta;
  const double gj = m.dc.g_ul[j];
  const double gk = m.dc.g_ul[k];
  const double norm = 1.0 - std::exp(-gk * std::pow(y, d));
  return d * gj * std::pow(l, d - 1.0) * std::exp(-gj * std::pow(l, d)) / norm;
}

double joint_pl_pdf_offdiag(const Model& m, double x, double y, std::size_t k,
                            std::size_t j) {
  if (x < 0.0 || y < 0.0)
    throw std::domain_error("joint_pl_pdf_offdiag: nonnegative args required");
  if (k == j || x == 0.0) return 0.0;
  const auto& w = m.dc.ul_weight;
  const auto& wd = m.dc.dl_weight;
  const double r_lo = w[j] / w[k];
  const double r_hi = wd[j] / wd[k];
  const double r = y / x;
  if (!(r_lo <= r_hi) || r < r_lo || r > r_hi) return 0.0;
  const double d = m.dc.delta;
  double expo = 0.0;
  for (std::size_t i = 0; i < m.dc.num_tiers(); ++i) {
    const double cand = std::max(wd[i] / wd[j] * y, w[i] / w[k] * x);
    expo += m.dc.a[i] * std::pow(cand, d);
  }
  return m.dc.a[j] * m.dc.a[k] * d * d * std::pow(x, d - 1.0) *
         std::pow(y, d - 1.0) * std::exp(-expo);
}

double joint_pl_pdf_diag(const Model& m, double x, std::size_t k) {
  if (x < 0.0)
    throw std::domain_error("joint_pl_pdf_diag: nonnegative arg required");
  if (x == 0.0) return 0.0;
  const auto& w = m.dc.ul_weight;
  const auto& wd = m.dc.dl_weight;
  const double d = m.dc.delta;
  double coef = 0.0;
  for (std::size_t i = 0; i < m.dc.num_tiers(); ++i) {
    const double cand = std::max(wd[i] / wd[k], w[i] / w[k]);
    coef += m.dc.a[i] * std::pow(cand, d);
  }
  return m.dc.a[k] * d * std::pow(x, d - 1.0) * std::exp(-coef * std::pow(x, d));
}

double joint_pl_total_mass(const Model& m) {
  const std::size_t n = m.dc.num_tiers();
  const double d = m.dc.delta;
  const auto& w = m.dc.ul_weight;
  const auto& wd = m.dc.dl_weight;
  double total = 0.0;
  // Diagonal masses integrate in closed form: a_k / coef.
  for (std::size_t k = 0; k < n; ++k) {
    double coef = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      coef += m.dc.a[i] * std::pow(std::max(wd[i] / wd[k], w[i] / w[k]), d);
    total += m.dc.a[k] / coef;
  }
  // Wedges: integrate x out analytically, leaving a 1-D integral over r = y/x.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      const double r_lo = w[j] / w[k];
      const double r_hi = wd[j] / wd[k];
      if (!(r_lo < r_hi)) continue;
      auto integrand = [&](double r) {
        double q = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double cand = std::max(wd[i] / wd[j] * r, w[i] / w[k]);
          q += m.dc.a[i] * std::pow(cand, d);
        }
        return std::pow(r, d - 1.0) / (q * q);
      };
      total += m.dc.a[j] * m.dc.a[k] * d *
               integrate_finite(integrand, r_lo, r_hi);
    }
  }
  return total;
}

double LoadPmf::mass() const {
  double s = 0.0;
  for (double p : pmf) s += p;
  return s;
}

LoadPmf load_pmf(const Model& m, std::size_t tier, Link link) {
  const auto& assoc = assoc_of(m, link);
  const double ratio =
      m.cfg.user_density * assoc[tier] / m.cfg.tiers[tier].density;
  LoadPmf out;
  out.mean_area_ratio = ratio;
  if (ratio <= 0.0) {
    out.pmf = {1.0};
    return out;
  }
  // P(N=n) = 3.5^3.5 / (n-1)! * Gamma(n+3.5)/Gamma(3.5)
  //          * ratio^{n-1} * (3.5 + ratio)^{-(n+3.5)}
  const double c = 3.5;
  const double log_ratio = std::log(ratio);
  const double log_cr = std::log(c + ratio);
  double cum = 0.0;
  for (int n = 1; n <= 10000; ++n) {
    const double logp = c * std::log(c) + std::lgamma(n + c) -
                        std::lgamma(static_cast<double>(n)) - std::lgamma(c) +
                        (n - 1) * log_ratio - (n + c) * log_cr;
    const double p = std::exp(logp);
    out.pmf.push_back(p);
    cum += p;
    if (cum > 1.0 - 1e-6) break;
  }
  return out;
}

double mean_load(const Model& m, std::size_t tier, Link link) {
  const auto& assoc = assoc_of(m, link);
  return 1.0 + 1.28 * m.cfg.user_density * assoc[tier] /
                   m.cfg.tiers[tier].density;
}

}  // namespace hcncov
