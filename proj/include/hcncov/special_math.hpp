#pragma once

#include <functional>
#include <stdexcept>

#include "hcncov/types.hpp"

namespace hcncov {

// Gauss hypergeometric kernel 2F1(1, 1-delta; 2-delta; -x) for x >= 0,
// delta in (0,1). Strictly positive, decreasing in x, equals 1 at x = 0.
double hyp2f1_kernel(double x, double delta);

// Same quantity through the Euler integral (1-delta) * int_0^1 t^{-delta}/(1+x t) dt,
// evaluated by adaptive quadrature after the substitution t = u^{1/(1-delta)}.
// Test oracle; independent of the series evaluation above.
double hyp2f1_kernel_by_quadrature(double x, double delta,
                                   const QuadratureSpec& q = {});

namespace detail {

struct Gk15Result {
  double value;
  double error;
};

// 15-point Gauss-Kronrod rule on [a,b] with embedded 7-point error estimate.
template <typename F>
Gk15Result gk15(const F& f, double a, double b) {
  // Kronrod nodes on [0,1] of |x| and weights; Gauss weights for the embedded rule.
  static const double xgk[8] = {
      0.991455371120813, 0.949107912342759, 0.864864423359769,
      0.741531185599394, 0.586087235467691, 0.405845151377397,
      0.207784955007898, 0.000000000000000};
  static const double wgk[8] = {
      0.022935322010529, 0.063092092629979, 0.104790010322250,
      0.140653259715525, 0.169004726639267, 0.190350578064785,
      0.204432940075298, 0.209482141084728};
  static const double wg[4] = {
      0.129484966168870, 0.279705391489277, 0.381830050505119,
      0.417959183673469};

  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double result_k = fc * wgk[7];
  double result_g = fc * wg[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * xgk[i];
    const double fsum = f(c - dx) + f(c + dx);
    result_k += wgk[i] * fsum;
    if (i % 2 == 1) result_g += wg[i / 2] * fsum;
  }
  result_k *= h;
  result_g *= h;
  return {result_k, std::abs(result_k - result_g)};
}

template <typename F>
double adaptive_finite(const F& f, double a, double b, const QuadratureSpec& q) {
  struct Seg {
    double a, b, value, error;
  };
  std::vector<Seg> segs;
  auto first = gk15(f, a, b);
  segs.push_back({a, b, first.value, first.error});
  double total = first.value;
  double total_err = first.error;
  int splits = 0;
  while (total_err > std::max(q.abs_tol, q.rel_tol * std::abs(total))) {
    if (splits++ >= q.max_subdivisions)
      throw std::runtime_error("quadrature failed to converge");
    // split the segment with the largest error estimate
    std::size_t worst = 0;
    for (std::size_t i = 1; i < segs.size(); ++i)
      if (segs[i].error > segs[worst].error) worst = i;
    Seg s = segs[worst];
    const double m = 0.5 * (s.a + s.b);
    auto left = gk15(f, s.a, m);
    auto right = gk15(f, m, s.b);
    total += left.value + right.value - s.value;
    total_err += left.error + right.error - s.error;
    segs[worst] = {s.a, m, left.value, left.error};
    segs.push_back({m, s.b, right.value, right.error});
  }
  return total;
}

}  // namespace detail

// Adaptive integral of f over [a,b].
template <typename F>
double integrate_finite(const F& f, double a, double b,
                        const QuadratureSpec& q = {}) {
  if (!(b > a)) return 0.0;
  return detail::adaptive_finite(f, a, b, q);
}

// Adaptive integral of f over (0, inf) via the map x = t/(1-t).
// Requires f integrable with eventual decay; integrable endpoint
// singularities are resolved by subdivision.
template <typename F>
double integrate_semi_infinite(const F& f, const QuadratureSpec& q = {}) {
  auto g = [&f](double t) {
    const double om = 1.0 - t;
    const double x = t / om;
    return f(x) / (om * om);
  };
  return detail::adaptive_finite(g, 0.0, 1.0, q);
}

}  // namespace hcncov
