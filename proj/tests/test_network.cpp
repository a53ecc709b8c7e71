#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hcncov/network.hpp"
#include "hcncov/rng.hpp"

using namespace hcncov;

namespace {

NetworkConfig table1_config(double lambda2_ratio = 6.0,
                            double w2_db = -20.0) {
  NetworkConfig cfg;
  cfg.alpha = 3.5;
  cfg.shadow_sigma_db = 8.0;
  cfg.user_density = 200.0;
  cfg.pcf = 1.0;
  TierParams t1;
  t1.density = 5.0;
  t1.tx_power = 2e5;
  TierParams t2;
  t2.density = 5.0 * lambda2_ratio;
  t2.tx_power = 2e3;
  t2.ul_weight = std::pow(10.0, w2_db / 10.0);
  t2.dl_weight = t2.ul_weight;
  cfg.tiers = {t1, t2};
  return cfg;
}

}  // namespace

TEST_CASE("default two-tier config is valid") {
  CHECK(validation_errors(table1_config()).empty());
}

TEST_CASE("alpha at 2 is rejected") {
  auto cfg = table1_config();
  cfg.alpha = 2.0;
  const std::string errs = validation_errors(cfg);
  CHECK(errs.find("alpha must exceed 2") != std::string::npos);
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
}

TEST_CASE("pcf outside [0,1] is rejected") {
  auto cfg = table1_config();
  cfg.pcf = 1.2;
  CHECK(validation_errors(cfg).find("pcf outside [0,1]") != std::string::npos);
}

TEST_CASE("lognormal delta moment closed form") {
  CHECK(lognormal_delta_moment(0.0, 0.5) == doctest::Approx(1.0));
  CHECK(lognormal_delta_moment(8.0, 2.0 / 3.5) ==
        doctest::Approx(1.7401899).epsilon(1e-6));
  CHECK(lognormal_delta_moment(8.0, 0.5) ==
        doctest::Approx(1.5282936).epsilon(1e-6));
}

TEST_CASE("lognormal delta moment vs Monte Carlo averaging") {
  // independent oracle: average S^delta over lognormal samples
  const double sigma_db = 8.0, delta = 2.0 / 3.5;
  const double sigma_ln = sigma_db * std::log(10.0) / 10.0;
  SplitMix rng(12345);
  const std::size_t n = 10'000'000;
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = inverse_normal_cdf(rng.next_unit());
    const double term = std::exp(delta * sigma_ln * z) - comp;
    const double t = sum + term;
    comp = (t - sum) - term;
    sum = t;
  }
  const double mc = sum / static_cast<double>(n);
  // sd of S^delta is about 1.5; 4 sigma of the mean ~ 0.002
  CHECK(std::abs(mc - lognormal_delta_moment(sigma_db, delta)) < 3e-3);
}

TEST_CASE("single tier associates with probability one") {
  NetworkConfig cfg = table1_config();
  cfg.tiers.resize(1);
  const auto dc = derive_constants(cfg);
  CHECK(dc.assoc_ul.size() == 1);
  CHECK(dc.assoc_ul[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("equal weights give density-proportional association") {
  auto cfg = table1_config(4.0, 0.0);
  const auto dc = derive_constants(cfg);
  CHECK(dc.assoc_ul[0] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(dc.assoc_ul[1] == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("biased two-tier association probability") {
  // lambda2 = 6 lambda1, mu2/mu1 = -20 dB, alpha = 3.5:
  // A1 = 1 / (1 + 6 * 0.01^{2/3.5})
  const auto dc = derive_constants(table1_config(6.0, -20.0));
  CHECK(dc.assoc_ul[0] == doctest::Approx(0.6984160).epsilon(1e-6));
}

TEST_CASE("association probabilities sum to one") {
  for (double ratio : {1.0, 3.0, 6.0, 11.0}) {
    for (double wdb : {-20.0, -7.0, 0.0, 4.0}) {
      const auto dc = derive_constants(table1_config(ratio, wdb));
      double s_ul = 0.0, s_dl = 0.0;
      for (std::size_t k = 0; k < dc.num_tiers(); ++k) {
        s_ul += dc.assoc_ul[k];
        s_dl += dc.assoc_dl[k];
        CHECK(dc.g_ul[k] >= dc.a[k]);
        CHECK(dc.a[k] > 0.0);
      }
      CHECK(s_ul == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(s_dl == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("common weight scaling leaves constants unchanged") {
  auto cfg = table1_config();
  const auto dc1 = derive_constants(cfg);
  for (auto& t : cfg.tiers) {
    t.ul_weight *= 37.5;
    t.dl_weight *= 0.004;
  }
  const auto dc2 = derive_constants(cfg);
  for (std::size_t k = 0; k < dc1.num_tiers(); ++k) {
    CHECK(dc1.g_ul[k] == doctest::Approx(dc2.g_ul[k]).epsilon(1e-13));
    CHECK(dc1.g_dl[k] == doctest::Approx(dc2.g_dl[k]).epsilon(1e-13));
    CHECK(dc1.assoc_ul[k] == doctest::Approx(dc2.assoc_ul[k]).epsilon(1e-13));
  }
}
