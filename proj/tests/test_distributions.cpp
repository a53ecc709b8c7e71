#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hcncov/distributions.hpp"
#include "hcncov/network.hpp"
#include "hcncov/special_math.hpp"

using namespace hcncov;

namespace {

Model two_tier(double w2_ul_db, double w2_dl_db, double l2_ratio = 6.0) {
  NetworkConfig cfg;
  cfg.alpha = 3.5;
  cfg.shadow_sigma_db = 8.0;
  cfg.user_density = 200.0;
  cfg.pcf = 0.5;
  TierParams t1;
  t1.density = 5.0;
  TierParams t2;
  t2.density = 5.0 * l2_ratio;
  t2.ul_weight = db_to_linear(w2_ul_db);
  t2.dl_weight = db_to_linear(w2_dl_db);
  cfg.tiers = {t1, t2};
  return make_model(cfg);
}

}  // namespace

TEST_CASE("serving path loss density integrates to one") {
  const Model m = two_tier(-20.0, -14.0);
  const double mass = integrate_semi_infinite(
      [&](double l) { return serving_pl_pdf(m, l); });
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  for (std::size_t k = 0; k < 2; ++k) {
    const double cond = integrate_semi_infinite(
        [&](double l) { return serving_pl_pdf(m, l, k); });
    CHECK(cond == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("single-tier CCDF is the void probability") {
  NetworkConfig cfg;
  cfg.alpha = 3.5;
  cfg.shadow_sigma_db = 8.0;
  cfg.tiers = {TierParams{.density = 5.0}};
  const Model m = make_model(cfg);
  const double a1 = m.dc.a[0];
  for (double l : {1e-4, 1e-3, 1e-2, 0.3}) {
    CHECK(serving_pl_ccdf(m, l) ==
          doctest::Approx(std::exp(-a1 * std::pow(l, m.dc.delta)))
              .epsilon(1e-12));
  }
}

TEST_CASE("tier-conditional median inverts the conditional CCDF") {
  // G_k l^delta = ln 2 with G_k = 2, delta = 0.5 -> l = (ln2 / 2)^2
  NetworkConfig cfg;
  cfg.alpha = 4.0;
  cfg.shadow_sigma_db = 0.0;
  cfg.tiers = {TierParams{.density = 2.0 / M_PI}};  // a_1 = G_1 = 2
  const Model m = make_model(cfg);
  REQUIRE(m.dc.g_ul[0] == doctest::Approx(2.0).epsilon(1e-12));
  const double median = std::pow(std::log(2.0) / 2.0, 2.0);
  CHECK(median == doctest::Approx(0.1201).epsilon(1e-3));
  CHECK(serving_pl_ccdf(m, median, 0) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("mixture identity: sum_j A_j f_(L|j) = f_L") {
  const Model m = two_tier(-20.0, -14.0);
  for (double l : {1e-4, 1e-3, 1e-2, 0.1, 1.0}) {
    double mix = 0.0;
    for (std::size_t j = 0; j < 2; ++j)
      mix += m.dc.assoc_ul[j] * serving_pl_pdf(m, l, j);
    CHECK(mix == doctest::Approx(serving_pl_pdf(m, l)).epsilon(1e-12));
  }
}

TEST_CASE("interferer path loss density: support and normalization") {
  const Model m = two_tier(-20.0, -14.0);
  const double d = m.dc.delta;
  // support identity G_j (w_j/w_k)^delta = G_k
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t k = 0; k < 2; ++k) {
      const double ratio = m.dc.ul_weight[j] / m.dc.ul_weight[k];
      CHECK(m.dc.g_ul[j] * std::pow(ratio, d) ==
            doctest::Approx(m.dc.g_ul[k]).epsilon(1e-12));
    }
  }
  const double y = 0.02;
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t k = 0; k < 2; ++k) {
      const double bound = m.dc.ul_weight[j] / m.dc.ul_weight[k] * y;
      CHECK(interferer_pl_pdf(m, bound * 1.0001, j, k, y) == 0.0);
      const double mass = integrate_finite(
          [&](double l) { return interferer_pl_pdf(m, l, j, k, y); }, 0.0,
          bound);
      CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
  CHECK_THROWS_AS(interferer_pl_pdf(m, 0.1, 0, 0, -1.0), std::domain_error);
}

TEST_CASE("joint law: support, marginalization, and total mass") {
  const Model m = two_tier(0.0, -14.0);
  const auto& w = m.dc.ul_weight;
  const auto& wd = m.dc.dl_weight;

  SUBCASE("outside the wedge the density vanishes") {
    // for (k=0 UL, j=1 DL): wedge is w1/w0 <= y/x <= wd1/wd0
    const double x = 0.01;
    const double below = 0.5 * (w[1] / w[0]) * x;
    CHECK(below > 0.0);
    CHECK(joint_pl_pdf_offdiag(m, x, below, 0, 1) == 0.0);
    const double above = 1.5 * (wd[1] / wd[0]) * x;
    CHECK(joint_pl_pdf_offdiag(m, x, above, 0, 1) == 0.0);
  }

  SUBCASE("total mass is one") {
    CHECK(joint_pl_total_mass(m) == doctest::Approx(1.0).epsilon(1e-6));
    const Model coupled = two_tier(-20.0, -20.0);
    CHECK(joint_pl_total_mass(coupled) ==
          doctest::Approx(1.0).epsilon(1e-6));
  }

  SUBCASE("marginalizing over the DL variable recovers the serving law") {
    // integrate the wedge density over y and add the diagonal part
    for (double x : {0.002, 0.01, 0.05}) {
      double marg = 0.0;
      for (std::size_t k = 0; k < 2; ++k) {
        marg += joint_pl_pdf_diag(m, x, k);
        for (std::size_t j = 0; j < 2; ++j) {
          if (j == k) continue;
          const double r_lo = w[j] / w[k];
          const double r_hi = wd[j] / wd[k];
          if (!(r_lo < r_hi)) continue;
          marg += integrate_finite(
              [&](double y) { return joint_pl_pdf_offdiag(m, x, y, k, j); },
              r_lo * x, r_hi * x);
        }
      }
      CHECK(marg == doctest::Approx(serving_pl_pdf(m, x)).epsilon(1e-4));
    }
  }

  SUBCASE("coupled weights collapse onto the diagonal") {
    const Model coupled = two_tier(-20.0, -20.0);
    // no off-diagonal wedge exists
    CHECK(joint_pl_pdf_offdiag(coupled, 0.01, 0.01, 0, 1) == 0.0);
    // diagonal density equals A_k times the tier-conditional law
    for (double x : {0.001, 0.01, 0.1}) {
      for (std::size_t k = 0; k < 2; ++k) {
        const double expected =
            coupled.dc.assoc_ul[k] * serving_pl_pdf(coupled, x, k);
        CHECK(joint_pl_pdf_diag(coupled, x, k) ==
              doctest::Approx(expected).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("load pmf mass and limits") {
  const Model m = two_tier(0.0, 0.0);
  for (std::size_t k = 0; k < 2; ++k) {
    for (Link link : {Link::uplink, Link::downlink}) {
      const auto pmf = load_pmf(m, k, link);
      CHECK(pmf.mass() == doctest::Approx(1.0).epsilon(2e-6));
    }
  }
  // empty-cell limit: lambda_u -> 0 concentrates on n = 1
  NetworkConfig cfg = m.cfg;
  cfg.user_density = 1e-9;
  const Model empty = make_model(cfg);
  const auto pmf = load_pmf(empty, 0, Link::uplink);
  CHECK(pmf.pmf[0] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("mean load plug-in values") {
  // lambda_u A_k / lambda_k = 1 -> 2.28
  NetworkConfig cfg;
  cfg.alpha = 3.5;
  cfg.shadow_sigma_db = 0.0;
  cfg.user_density = 5.0;
  cfg.tiers = {TierParams{.density = 5.0}};
  CHECK(mean_load(make_model(cfg), 0, Link::uplink) ==
        doctest::Approx(2.28).epsilon(1e-12));
  cfg.user_density = 0.0;
  CHECK(mean_load(make_model(cfg), 0, Link::uplink) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // three-tier example: lambda_u=200, lambda_1=5, lambda_2=30, equal weights
  NetworkConfig c2;
  c2.alpha = 3.5;
  c2.shadow_sigma_db = 8.0;
  c2.user_density = 200.0;
  c2.tiers = {TierParams{.density = 5.0}, TierParams{.density = 30.0}};
  const Model m2 = make_model(c2);
  CHECK(m2.dc.assoc_ul[0] == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
  CHECK(mean_load(m2, 0, Link::uplink) ==
        doctest::Approx(1.0 + 1.28 * 40.0 / 7.0).epsilon(1e-12));
}
