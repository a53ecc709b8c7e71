#include <doctest.h>

#include <cmath>

#include "hcncov/distributions.hpp"
#include "hcncov/joint_coverage.hpp"
#include "hcncov/network.hpp"
#include "hcncov/special_math.hpp"
#include "hcncov/uplink_coverage.hpp"

using namespace hcncov;

namespace {

Model decoupled_two_tier(double eps = 0.5, double ul_db = 0.0,
                         double dl_db = -14.0) {
  NetworkConfig cfg;
  cfg.alpha = 3.5;
  cfg.shadow_sigma_db = 8.0;
  cfg.user_density = 200.0;
  cfg.pcf = eps;
  cfg.uplink_fraction = 0.5;
  TierParams t1;
  t1.density = 5.0;
  t1.tx_power = db_to_linear(53.0);
  TierParams t2;
  t2.density = 30.0;
  t2.tx_power = db_to_linear(33.0);
  t2.ul_weight = db_to_linear(ul_db);
  t2.dl_weight = db_to_linear(dl_db);
  cfg.tiers = {t1, t2};
  return make_model(cfg);
}

}  // namespace

TEST_CASE("downlink Laplace transform basics") {
  const Model m = decoupled_two_tier();
  CHECK(laplace_dl_interference(m, 0.0, 0, 0.01) == 1.0);
  // meaningful s values scale like tau * l / P_j
  const double s0 = 0.01 / m.cfg.tiers[0].tx_power;
  double prev = 1.0;
  for (double scale : {0.01, 0.1, 1.0, 10.0}) {
    const double v = laplace_dl_interference(m, scale * s0, 0, 0.01);
    CHECK(v < prev);
    CHECK(v > 0.0);
    prev = v;
  }
}

TEST_CASE("single-tier downlink reduces to the reference closed form") {
  NetworkConfig cfg;
  cfg.alpha = 3.5;
  cfg.shadow_sigma_db = 8.0;
  cfg.tiers = {TierParams{.density = 5.0, .tx_power = 100.0}};
  const Model m = make_model(cfg);
  for (double tau_db : {-5.0, 0.0, 10.0}) {
    const double tau = db_to_linear(tau_db);
    CHECK(dl_sir_coverage(m, tau) ==
          doctest::Approx(downlink_sir_reference(tau, m.dc.delta))
              .epsilon(1e-6));
  }
}

TEST_CASE("joint coverage marginals") {
  const Model m = decoupled_two_tier();
  const double tau = db_to_linear(0.0);
  SUBCASE("downlink threshold to zero recovers the uplink marginal") {
    CHECK(joint_sir_coverage(m, tau, 0.0) ==
          doctest::Approx(sir_coverage(m, tau)).epsilon(1e-4));
  }
  SUBCASE("uplink threshold to zero recovers the downlink marginal") {
    CHECK(joint_sir_coverage(m, 0.0, tau) ==
          doctest::Approx(dl_sir_coverage(m, tau)).epsilon(1e-4));
  }
}

TEST_CASE("joint coverage satisfies the Frechet bounds") {
  const Model m = decoupled_two_tier(0.5);
  for (double tu_db : {-5.0, 0.0, 5.0}) {
    for (double td_db : {-5.0, 0.0, 5.0}) {
      const double tu = db_to_linear(tu_db);
      const double td = db_to_linear(td_db);
      const double pu = sir_coverage(m, tu);
      const double pd = dl_sir_coverage(m, td);
      const double j = joint_sir_coverage(m, tu, td);
      CHECK(j <= std::min(pu, pd) + 2e-3);
      CHECK(j >= std::max(0.0, pu + pd - 1.0) - 2e-3);
    }
  }
}

TEST_CASE("coupled association collapses to the diagonal") {
  // mu = mu' per tier: the joint integral is a single integral over the
  // diagonal; cross-check against a direct coupled implementation
  const Model m = decoupled_two_tier(0.5, -14.0, -14.0);
  const double tau_u = db_to_linear(0.0);
  const double tau_d = db_to_linear(-3.0);
  double direct = 0.0;
  for (std::size_t k = 0; k < 2; ++k) {
    const double gk = m.dc.g_ul[k];
    const double pk = m.cfg.tiers[k].tx_power;
    auto f = [&](double u) {
      const double l = std::pow(u / gk, 1.0 / m.dc.delta);
      return std::exp(-u) *
             laplace_ul_interference(
                 m, tau_u * std::pow(l, 1.0 - m.cfg.pcf), k) *
             laplace_dl_interference(m, tau_d * l / pk, k, l);
    };
    direct += m.dc.assoc_ul[k] * integrate_semi_infinite(f);
  }
  CHECK(joint_sir_coverage(m, tau_u, tau_d) ==
        doctest::Approx(direct).epsilon(1e-6));
}

TEST_CASE("joint rate coverage limits") {
  const Model m = decoupled_two_tier(0.5);
  const double rho = 128e3;
  SUBCASE("downlink rate at zero reduces to the uplink rate coverage") {
    CHECK(joint_rate_coverage(m, rho, 0.0) ==
          doctest::Approx(rate_coverage(m, rho, LoadModel::mean_load))
              .epsilon(1e-4));
  }
  SUBCASE("joint is below both marginals (coupled equal weights)") {
    const Model cm = decoupled_two_tier(0.5, 0.0, 0.0);
    const double joint = joint_rate_coverage(cm, rho, rho);
    const double ul = rate_coverage(cm, rho, LoadModel::mean_load);
    CHECK(joint <= ul + 1e-6);
  }
  SUBCASE("non-increasing in each rate threshold") {
    const double j00 = joint_rate_coverage(m, rho, rho);
    CHECK(joint_rate_coverage(m, 2.0 * rho, rho) <= j00 + 1e-9);
    CHECK(joint_rate_coverage(m, rho, 2.0 * rho) <= j00 + 1e-9);
  }
}
