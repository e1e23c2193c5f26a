#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "compnoma/errors.hpp"
#include "compnoma/hypoexp.hpp"
#include "compnoma/selfcheck.hpp"

using namespace compnoma;

namespace {
Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const double x : xs) v[i++] = x;
  return v;
}
}  // namespace

TEST_CASE("two-rate closed form") {
  const RateSet rs = make_rate_set(vec({1.0, 2.0}));
  const Eigen::VectorXd w = partial_fraction_weights(rs.rates);
  CHECK(w(0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(w(1) == doctest::Approx(-1.0).epsilon(1e-15));
  // f(x) = 2(e^-x - e^-2x), F(x) = 1 - 2e^-x + e^-2x
  CHECK(pdf(rs, 1.0) ==
        doctest::Approx(2.0 * (std::exp(-1.0) - std::exp(-2.0))).epsilon(1e-14));
  CHECK(cdf(rs, 1.0) ==
        doctest::Approx(1.0 - 2.0 * std::exp(-1.0) + std::exp(-2.0)).epsilon(1e-14));
  CHECK(mean(rs) == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("distribution basics") {
  const RateSet rs = make_rate_set(vec({0.5, 1.7, 3.1}));
  CHECK(pdf(rs, -1.0) == 0.0);
  CHECK(cdf(rs, -1.0) == 0.0);
  CHECK(pdf(rs, 0.0) == doctest::Approx(0.0).epsilon(1e-12));  // density starts at 0 for n >= 2
  CHECK(cdf(rs, 1e9) == 1.0);
  CHECK(cdf(rs, 3.0) > cdf(rs, 1.0));
  CHECK(mean(rs) == doctest::Approx(1.0 / 0.5 + 1.0 / 1.7 + 1.0 / 3.1).epsilon(1e-14));
}

TEST_CASE("rate collisions") {
  CHECK_THROWS_AS(make_rate_set(vec({1.0, 1.0 + 1e-12})), RateCollisionError);
  CHECK_THROWS_AS(
      make_rate_set(vec({2.0, 1.0, 1.0 + 1e-12}), RateKind::GENERIC,
                    DegeneratePolicy::fail),
      RateCollisionError);

  const RateSet rs = make_rate_set(vec({1.0, 1.0 + 1e-12}), RateKind::GENERIC,
                                   DegeneratePolicy::perturb);
  CHECK(rs.perturbed);
  const double gap = std::abs(rs.rates[1] - rs.rates[0]) /
                     std::max(rs.rates[0], rs.rates[1]);
  CHECK(gap > kRateDistinctTol);
  // the nudge is tiny: the mean moves by well under one part in a million
  CHECK(mean(rs) == doctest::Approx(2.0).epsilon(1e-6));

  const RateSet clean = make_rate_set(vec({1.0, 2.0}), RateKind::GENERIC,
                                      DegeneratePolicy::perturb);
  CHECK_FALSE(clean.perturbed);
  CHECK(clean.rates[0] == 1.0);
  CHECK(clean.rates[1] == 2.0);
}

TEST_CASE("weight identities for a large rate count") {
  // 10 rates exercises the log-magnitude product path
  Eigen::VectorXd rates(10);
  for (int i = 0; i < 10; ++i) rates[i] = 0.3 + 0.613 * i;
  const Eigen::VectorXd w = partial_fraction_weights(rates);
  // sum w_i = 1 (CDF at 0) and sum w_i k_i = 0 (density at 0), n >= 2
  CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(w.dot(rates) == doctest::Approx(0.0).scale(w.cwiseAbs().dot(rates)).epsilon(1e-9));

  const RateSet rs = make_rate_set(rates);
  const double norm = integrate([&](double x) { return pdf(rs, x); }, 0.0,
                                40.0 / rates.minCoeff(), 1e-9);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("capacity rate sets scale as 1/(alpha rho lambda)") {
  const LinkTable t = build_link_table(distances(preset_b2()), 4.0, 0.01);

  const RateSet full = rates_ccu(t, 0, 0.05, 100.0, true);
  REQUIRE(full.rates.size() == 2);
  CHECK(full.kind == RateKind::CCU_FULL);
  CHECK(full.rates[0] == doctest::Approx(0.0084085336862816627).epsilon(1e-13));

  // doubling alpha halves every rate
  const RateSet full2 = rates_ccu(t, 0, 0.10, 100.0, true);
  for (int i = 0; i < 2; ++i) {
    CHECK(full2.rates[i] == doctest::Approx(0.5 * full.rates[i]).epsilon(1e-14));
  }

  const RateSet interf = rates_ccu(t, 0, 0.05, 100.0, false);
  REQUIRE(interf.rates.size() == 1);
  CHECK(interf.kind == RateKind::CCU_INTERF);
  CHECK(interf.rates[0] == doctest::Approx(full.rates[1]).epsilon(1e-14));

  const RateSet num = rates_ceu(t, 0.05, 100.0, RateKind::CEU_NUM);
  const RateSet den = rates_ceu(t, 0.05, 100.0, RateKind::CEU_DEN);
  REQUIRE(num.rates.size() == 2);
  REQUIRE(den.rates.size() == 2);
  for (int i = 0; i < 2; ++i) {
    CHECK(den.rates[i] == doctest::Approx(num.rates[i] / 0.05).epsilon(1e-14));
  }
}

TEST_CASE("rate-set preconditions") {
  const LinkTable t = build_link_table(distances(preset_b2()), 4.0, 0.0);
  CHECK_THROWS_AS(rates_ccu(t, 0, 0.0, 100.0, true), ParamError);
  CHECK_THROWS_AS(rates_ccu(t, -1, 0.05, 100.0, true), ParamError);
  CHECK_THROWS_AS(rates_ccu(t, 2, 0.05, 100.0, true), ParamError);
  CHECK_THROWS_AS(rates_ceu(t, 0.05, 0.0, RateKind::CEU_NUM), ParamError);
  CHECK_THROWS_AS(make_rate_set(Eigen::VectorXd()), ParamError);
}
