#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hcncov/network.hpp"
#include "hcncov/special_math.hpp"
#include "hcncov/uplink_coverage.hpp"

using namespace hcncov;

namespace {

constexpr double kPi = std::numbers::pi;

Model make_two_tier(double alpha, double eps, double w2_db,
                    double l2_ratio = 6.0, double sigma_db = 8.0) {
  NetworkConfig cfg;
  cfg.alpha = alpha;
  cfg.shadow_sigma_db = sigma_db;
  cfg.user_density = 200.0;
  cfg.pcf = eps;
  TierParams t1;
  t1.density = 5.0;
  TierParams t2;
  t2.density = 5.0 * l2_ratio;
  t2.ul_weight = db_to_linear(w2_db);
  t2.dl_weight = db_to_linear(w2_db);
  cfg.tiers = {t1, t2};
  return make_model(cfg);
}

Model make_single_tier(double alpha, double eps, double density = 5.0,
                       double sigma_db = 8.0) {
  NetworkConfig cfg;
  cfg.alpha = alpha;
  cfg.shadow_sigma_db = sigma_db;
  cfg.pcf = eps;
  cfg.tiers = {TierParams{.density = density}};
  return make_model(cfg);
}

}  // namespace

TEST_CASE("uplink interference Laplace transform basics") {
  const Model m = make_two_tier(3.5, 0.5, -20.0);
  CHECK(laplace_ul_interference(m, 0.0, 0) == 1.0);
  double prev = 1.0;
  for (double s : {0.01, 0.1, 1.0, 10.0}) {
    const double v = laplace_ul_interference(m, s, 0);
    CHECK(v < prev);
    CHECK(v > 0.0);
    prev = v;
  }
  CHECK_THROWS_AS(laplace_ul_interference(m, -0.1, 0), std::domain_error);
}

TEST_CASE("Laplace transform reduction at full inversion, equal weights") {
  // the path-loss dependence drops out: L(s) = exp(-d/(1-d) s C(s))
  const Model m = make_two_tier(3.5, 1.0, 0.0);
  const double d = m.dc.delta;
  for (double s : {0.05, 0.5, 2.0, 20.0}) {
    const double expected =
        std::exp(-d / (1.0 - d) * s * hyp2f1_kernel(s, d));
    CHECK(laplace_ul_interference(m, s, 0) ==
          doctest::Approx(expected).epsilon(1e-8));
    CHECK(laplace_ul_interference(m, s, 1) ==
          doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("SIR coverage tends to one at vanishing threshold") {
  const Model m = make_two_tier(3.5, 0.5, -20.0);
  CHECK(sir_coverage(m, 1e-9) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("closed-form anchor: alpha=4, eps=1, equal weights, tau=0 dB") {
  const Model m = make_two_tier(4.0, 1.0, 0.0);
  const double expected = std::exp(-kPi / 4.0);  // 0.45593813
  CHECK(sir_coverage_closed_eps1(m, 1.0) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(sir_coverage(m, 1.0) == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("closed eps=1 form matches the general path under bias") {
  const Model m = make_two_tier(3.5, 1.0, -20.0);
  for (double tau_db : {-5.0, 0.0, 10.0}) {
    const double tau = db_to_linear(tau_db);
    CHECK(sir_coverage_closed_eps1(m, tau) ==
          doctest::Approx(sir_coverage(m, tau)).epsilon(1e-6));
  }
  const Model m05 = make_two_tier(3.5, 0.5, -20.0);
  CHECK_THROWS_AS(sir_coverage_closed_eps1(m05, 1.0), std::invalid_argument);
}

TEST_CASE("SINR coverage approaches SIR coverage at high SNR") {
  Model m = make_two_tier(3.5, 0.5, -20.0);
  m.cfg.antenna_gain_db = 200.0;  // SNR -> infinity
  const double tau = 1.0;
  CHECK(sinr_coverage(m, tau) ==
        doctest::Approx(sir_coverage(m, tau)).epsilon(1e-6));
  // with the default link budget the noise term is small but nonzero
  const Model md = make_two_tier(3.5, 0.5, -20.0);
  CHECK(sinr_coverage(md, tau) <= sir_coverage(md, tau) + 1e-12);
}

TEST_CASE("no-power-control path agrees with the conditioning-free variant") {
  // at eps=0 interferer powers are constant, so dropping the interferer
  // path-loss conditioning (the a1 route) must give the identical integral
  for (double alpha : {3.5, 4.0}) {
    const Model m = make_two_tier(alpha, 0.0, -20.0);
    for (double tau_db : {-5.0, 0.0, 5.0}) {
      const double tau = db_to_linear(tau_db);
      CHECK(sir_coverage_a1(m, tau) ==
            doctest::Approx(sir_coverage(m, tau)).epsilon(1e-5));
    }
  }
}

TEST_CASE("upper bound is exact at full channel inversion") {
  const Model m = make_two_tier(3.5, 1.0, -20.0);
  for (double tau_db : {-10.0, 0.0, 10.0}) {
    const double tau = db_to_linear(tau_db);
    CHECK(sir_coverage_upper(m, tau) ==
          doctest::Approx(sir_coverage(m, tau)).epsilon(1e-8));
  }
}

TEST_CASE("bound sandwich holds on a small grid") {
  for (double eps : {0.0, 0.5, 1.0}) {
    for (double w2 : {-20.0, 0.0}) {
      const Model m = make_two_tier(3.5, eps, w2);
      for (double tau_db : {-10.0, 0.0, 10.0}) {
        const double tau = db_to_linear(tau_db);
        const double lo = sir_coverage_lower(m, tau);
        const double mid = sir_coverage(m, tau);
        const double hi = sir_coverage_upper(m, tau);
        CHECK(lo <= mid + 1e-6);
        CHECK(mid <= hi + 1e-6);
      }
    }
  }
}

TEST_CASE("lower bound closed-form values") {
  // equal weights: exp(-tau^d pi^2 d eps(1-eps) / (sin(pi d) sin(pi eps)))
  const Model m = make_two_tier(4.0, 0.5, 0.0);
  CHECK(sir_coverage_lower(m, 1.0) ==
        doctest::Approx(std::exp(-kPi * kPi / 8.0)).epsilon(1e-12));
  // endpoint continuation at eps = 1: factor -> 1/pi
  const Model m1 = make_two_tier(4.0, 1.0, 0.0);
  CHECK(sir_coverage_lower(m1, 1.0) ==
        doctest::Approx(std::exp(-kPi / 2.0)).epsilon(1e-12));
  CHECK(sir_coverage_lower(m1, 1.0) < std::exp(-kPi / 4.0));
  // eps = 0 endpoint mirrors eps = 1 under equal weights
  const Model m0 = make_two_tier(4.0, 0.0, 0.0);
  CHECK(sir_coverage_lower(m0, 1.0) ==
        doctest::Approx(std::exp(-kPi / 2.0)).epsilon(1e-12));
}

TEST_CASE("density invariance at full inversion with equal weights") {
  const double tau = db_to_linear(3.0);
  const Model base = make_two_tier(3.5, 1.0, 0.0);
  const double ref = sir_coverage(base, tau);
  for (double scale : {0.1, 10.0}) {
    NetworkConfig cfg = base.cfg;
    for (auto& t : cfg.tiers) t.density *= scale;
    CHECK(sir_coverage(make_model(cfg), tau) ==
          doctest::Approx(ref).epsilon(1e-8));
  }
}

TEST_CASE("equal weights collapse to a single merged tier") {
  const Model merged = make_single_tier(3.5, 0.5, 35.0);
  const Model split = make_two_tier(3.5, 0.5, 0.0);  // 5 + 30 per km^2
  for (double tau_db : {-5.0, 0.0, 8.0}) {
    const double tau = db_to_linear(tau_db);
    CHECK(sir_coverage(split, tau) ==
          doctest::Approx(sir_coverage(merged, tau)).epsilon(1e-6));
  }
}

TEST_CASE("downlink reference values and dominance") {
  CHECK(downlink_sir_reference(1.0, 0.5) ==
        doctest::Approx(1.0 / (1.0 + kPi / 4.0)).epsilon(1e-12));
  CHECK(downlink_sir_reference(1e-12, 0.5) == doctest::Approx(1.0));
  const Model m = make_two_tier(3.5, 1.0, 0.0);
  for (double tau_db = -10.0; tau_db <= 20.0; tau_db += 3.0) {
    const double tau = db_to_linear(tau_db);
    CHECK(downlink_sir_reference(tau, m.dc.delta) >=
          sir_coverage_closed_eps1(m, tau) - 1e-10);
  }
}

TEST_CASE("coverage curves are non-increasing in the threshold") {
  const Model m = make_two_tier(3.5, 0.5, -20.0);
  double prev = 1.0;
  for (double tau_db = -15.0; tau_db <= 20.0; tau_db += 5.0) {
    const double v = sir_coverage(m, db_to_linear(tau_db));
    CHECK(v <= prev + 1e-9);
    prev = v;
  }
}

TEST_CASE("rate coverage limits") {
  const Model m = make_two_tier(3.5, 0.5, -20.0);
  CHECK(rate_coverage(m, 1e-6, LoadModel::mean_load) ==
        doctest::Approx(1.0).epsilon(1e-4));

  // single user per cell: mean-load route reduces to sum_k A_k P_k(2^rho_hat - 1)
  NetworkConfig cfg = m.cfg;
  cfg.user_density = 1e-12;
  const Model m0 = make_model(cfg);
  const double rho = 2e5;
  const double rho_hat = rho / (cfg.uplink_fraction * cfg.bandwidth_hz);
  double expected = 0.0;
  for (std::size_t k = 0; k < 2; ++k)
    expected += m0.dc.assoc_ul[k] *
                cond_sir_coverage(m0, std::exp2(rho_hat) - 1.0, k);
  CHECK(rate_coverage(m0, rho, LoadModel::mean_load) ==
        doctest::Approx(expected).epsilon(1e-9));
  CHECK(rate_coverage(m0, rho, LoadModel::full_pmf) ==
        doctest::Approx(expected).epsilon(1e-5));

  // monotone non-increasing in rho
  double prev = 1.0;
  for (double r : {1e4, 1e5, 5e5, 2e6, 1e7}) {
    const double v = rate_coverage(m, r, LoadModel::mean_load);
    CHECK(v <= prev + 1e-9);
    prev = v;
  }
}

TEST_CASE("ablations order as exact > a1 > a2 at mid thresholds") {
  const Model m = make_two_tier(3.5, 1.0, -20.0);
  for (double tau_db : {-2.0, 0.0, 5.0}) {
    const double tau = db_to_linear(tau_db);
    const double exact = sir_coverage(m, tau);
    const double a1 = sir_coverage_a1(m, tau);
    const double a2 = sir_coverage_a2(m, tau);
    CHECK(a2 < a1);
    CHECK(a1 < exact);
  }
  CHECK(sir_coverage_a1(m, 1e-9) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(sir_coverage_a2(m, 1e-9) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("curve evaluation is policy independent") {
  const Model m = make_two_tier(3.5, 1.0, 0.0);
  const auto grid = db_grid(-10.0, 10.0, 9);
  auto f = [&](double t) { return sir_coverage_closed_eps1(m, t); };
  const auto serial = evaluate_curve(f, grid, Provenance::exact, "fp",
                                     Exec::serial);
  const auto parallel = evaluate_curve(f, grid, Provenance::exact, "fp",
                                       Exec::parallel);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(serial.values[i] == parallel.values[i]);
  CHECK(serial.values.front() > serial.values.back());
}
