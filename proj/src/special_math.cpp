#include "hcncov/special_math.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hcncov {

namespace {

// Direct series sum_{n>=0} (1-d)/(n+1-d) (-x)^n, |x| < 1.
double kernel_series(double x, double d) {
  double term = 1.0;  // (-x)^n
  double sum = 0.0;
  for (int n = 0; n < 500; ++n) {
    const double t = (1.0 - d) / (n + 1.0 - d) * term;
    sum += t;
    if (std::abs(t) < 1e-17 * std::abs(sum)) return sum;
    term *= -x;
  }
  return sum;
}

// Pfaff transform: 2F1(1,1-d;2-d;-x) = (1+x)^{-1} 2F1(1,1;2-d; x/(1+x)).
// Positive-term series, used for moderate x where the direct series is slow.
double kernel_pfaff(double x, double d) {
  const double w = x / (1.0 + x);
  double term = 1.0;
  double sum = 0.0;
  for (int n = 0; n < 4000; ++n) {
    sum += term;
    if (term < 1e-17 * sum) break;
    term *= (n + 1.0) / (n + 2.0 - d) * w;
  }
  return sum / (1.0 + x);
}

// Large-x form from the Euler integral:
//   2F1 = (1-d) x^{d-1} [ pi/sin(pi d) - T ],
//   T = sum_{k>=0} (-1)^k x^{-d-k}/(d+k),  convergent for x > 1.
double kernel_tail(double x, double d) {
  const double pi = std::numbers::pi;
  const double lead = pi / std::sin(pi * d);
  const double xmd = std::exp(-d * std::log(x));
  double term = xmd;  // x^{-d-k}, alternating below
  double tail = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double t = term / (d + k);
    tail += (k % 2 == 0) ? t : -t;
    if (std::abs(t) < 1e-17 * std::abs(lead)) break;
    term /= x;
  }
  return (1.0 - d) * std::exp((d - 1.0) * std::log(x)) * (lead - tail);
}

}  // namespace

double hyp2f1_kernel(double x, double delta) {
  if (x < 0.0) throw std::domain_error("hyp2f1_kernel: x must be >= 0");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::domain_error("hyp2f1_kernel: delta must be in (0,1)");
  if (x == 0.0) return 1.0;
  if (x < 0.5) return kernel_series(x, delta);
  if (x <= 3.0) return kernel_pfaff(x, delta);
  return kernel_tail(x, delta);
}

double hyp2f1_kernel_by_quadrature(double x, double delta,
                                   const QuadratureSpec& q) {
  if (x < 0.0) throw std::domain_error("hyp2f1_kernel_by_quadrature: x >= 0");
  // (1-d) int_0^1 t^{-d}/(1+x t) dt with t = u^{1/(1-d)} flattening t^{-d}.
  const double p = 1.0 / (1.0 - delta);
  auto f = [&](double u) { return 1.0 / (1.0 + x * std::pow(u, p)); };
  return integrate_finite(f, 0.0, 1.0, q);
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::exact: return "exact";
    case Provenance::upper_bound: return "upper_bound";
    case Provenance::lower_bound: return "lower_bound";
    case Provenance::simulation: return "simulation";
  }
  return "unknown";
}

double NetworkConfig::snr_linear() const {
  return db_to_linear(open_loop_psd_dbm_hz + antenna_gain_db +
                      reference_loss_db - noise_psd_dbm_hz);
}

}  // namespace hcncov
