#include <doctest.h>

#include <cmath>
#include <random>

#include "wmgame/error.hpp"
#include "wmgame/game_core.hpp"

#include "helpers.hpp"

using namespace wmgame;
using wmtest::worked_scenario;

TEST_CASE("csr_general endpoints and interior value") {
  CHECK(csr_general(0.2, 0.9, 0.8, 0.0, 0.6) == doctest::Approx(0.88).epsilon(1e-15));
  CHECK(csr_general(0.2, 0.9, 0.8, 1.0, 0.6) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(csr_general(0.2, 0.9, 0.8, 0.5, 0.6) == doctest::Approx(0.74).epsilon(1e-15));
}

TEST_CASE("csr_general rejects out-of-range inputs") {
  CHECK_THROWS_AS(csr_general(-0.1, 0.9, 0.8, 0.5, 0.6), GameError);
  CHECK_THROWS_AS(csr_general(0.2, 1.1, 0.8, 0.5, 0.6), GameError);
  CHECK_THROWS_AS(csr_general(0.2, 0.9, 0.8, 0.5, 2.0), GameError);
  try {
    csr_general(0.2, 0.9, 0.8, -0.5, 0.6);
    FAIL("expected domain error");
  } catch (const GameError& e) {
    CHECK(e.name() == "domain-error");
  }
}

TEST_CASE("csr_simplified values") {
  CHECK(csr_simplified(0.0, 0.2, 0.0, 0.5) == 1.0);
  CHECK(csr_simplified(0.5, 0.2, 1.0, 0.6) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(csr_simplified(0.1, 0.2, 0.1, 0.6) ==
        doctest::Approx(0.942).epsilon(1e-15));
}

TEST_CASE("csr_simplified accepts lambda above 1 while the rate stays valid") {
  CHECK(csr_simplified(0.25, 2.0, 0.0, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(csr_simplified(0.9, 2.0, 0.0, 0.5), GameError);
}

TEST_CASE("csr range and boundary identities over random draws") {
  std::mt19937_64 rng(71001);
  for (int t = 0; t < 2000; ++t) {
    const double alpha = wmtest::uniform(rng, 0.0, 1.0);
    const double p = wmtest::uniform(rng, 0.0, 1.0);
    const double q = wmtest::uniform(rng, 0.0, 1.0);
    const double beta = wmtest::uniform(rng, 0.0, 1.0);
    const double r = wmtest::uniform(rng, 0.0, 1.0);
    const double v = csr_general(alpha, p, q, beta, r);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(csr_general(alpha, p, q, 0.0, r) ==
          doctest::Approx((1.0 - alpha) * p + alpha * q).epsilon(1e-15));
    CHECK(csr_general(alpha, p, q, 1.0, r) == doctest::Approx(r).epsilon(1e-15));
    const double lambda = wmtest::uniform(rng, 0.0, 1.0);
    const double vs = csr_simplified(alpha, lambda, beta, r);
    CHECK(vs >= 0.0);
    CHECK(vs <= 1.0);
  }
}

TEST_CASE("attack_success_rate is the complement of robustness") {
  CHECK(attack_success_rate(1.0) == 0.0);
  CHECK(attack_success_rate(0.0) == 1.0);
  CHECK(attack_success_rate(0.6) == doctest::Approx(0.4).epsilon(1e-15));
  std::mt19937_64 rng(71002);
  for (int t = 0; t < 1000; ++t) {
    const double r = wmtest::uniform(rng, 0.0, 1.0);
    CHECK(attack_success_rate(attack_success_rate(r)) ==
          doctest::Approx(r).epsilon(1e-15));
  }
}

TEST_CASE("shared_degradation_cost is k times the strength sum") {
  CHECK(shared_degradation_cost(0.0, 0.7, 0.3) == 0.0);
  CHECK(shared_degradation_cost(0.5, 0.1, 0.9) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(shared_degradation_cost(0.5, 0.5, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(shared_degradation_cost(-1.0, 0.5, 0.5), GameError);
}

TEST_CASE("alice_payoff worked value and reductions") {
  const Scenario s = worked_scenario();
  CHECK(alice_payoff(s, 0, 0) == doctest::Approx(-0.5856).epsilon(1e-12));

  Scenario zero = s;
  zero.costs = CostParameters{};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(alice_payoff(zero, i, j) == 0.0);
      CHECK(bob_payoff(zero, i, j) == 0.0);
    }

  Scenario csr_only = s;
  csr_only.costs = CostParameters{};
  csr_only.costs.r_def_plus = 1.0;
  csr_only.costs.lambda = 0.2;
  csr_only.spaces.betas = {0.0, 0.9};
  CHECK(alice_payoff(csr_only, 0, 0) ==
        doctest::Approx(1.0 - 0.2 * 0.1).epsilon(1e-15));
  CHECK(alice_payoff(csr_only, 1, 0) ==
        doctest::Approx(1.0 - 0.2 * 0.5).epsilon(1e-15));
}

TEST_CASE("bob_payoff worked value and full-robustness case") {
  const Scenario s = worked_scenario();
  CHECK(bob_payoff(s, 0, 0) == doctest::Approx(-0.465).epsilon(1e-12));

  Scenario robust = s;
  robust.costs = CostParameters{};
  robust.costs.r_att_minus = 0.7;
  robust.robustness.r = {{1.0, 1.0}, {1.0, 1.0}};
  CHECK(bob_payoff(robust, 0, 0) == doctest::Approx(-0.7).epsilon(1e-15));
}

TEST_CASE("payoffs are linear in the initial costs") {
  std::mt19937_64 rng(71003);
  for (int t = 0; t < 300; ++t) {
    Scenario s = wmtest::random_simplified_2x2(rng);
    Scenario shifted = s;
    const double c = wmtest::uniform(rng, 0.0, 3.0);
    shifted.costs.i_def = s.costs.i_def + c;
    shifted.costs.i_att = s.costs.i_att + c;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        CHECK(alice_payoff(shifted, i, j) ==
              doctest::Approx(alice_payoff(s, i, j) - c).epsilon(1e-12));
        CHECK(bob_payoff(shifted, i, j) ==
              doctest::Approx(bob_payoff(s, i, j) - c).epsilon(1e-12));
      }
  }
}

TEST_CASE("build_payoff_matrix matches element-wise payoffs") {
  std::mt19937_64 rng(71004);
  for (int t = 0; t < 200; ++t) {
    const Scenario s = wmtest::random_simplified_2x2(rng);
    const PayoffMatrix m = build_payoff_matrix(s);
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        CHECK(m.u_alice[i][j] == alice_payoff(s, i, j));
        CHECK(m.u_bob[i][j] == bob_payoff(s, i, j));
        CHECK(std::isfinite(m.u_alice[i][j]));
        CHECK(std::isfinite(m.u_bob[i][j]));
      }
    CHECK(m.scenario_digest == scenario_digest(s));
    CHECK(m.scenario_digest.size() == 16);
  }
}

TEST_CASE("digest separates scenarios and is stable") {
  const Scenario s = worked_scenario();
  Scenario t = s;
  CHECK(scenario_digest(s) == scenario_digest(t));
  t.costs.k = 0.50000001;
  CHECK(scenario_digest(s) != scenario_digest(t));
}

TEST_CASE("general-profile mode drives payoffs through measured accuracies") {
  Scenario s = worked_scenario();
  s.csr_mode = CsrMode::kGeneralProfile;
  // Profiles tuned so (1-alpha)p + alpha*q = 1 - lambda*alpha at lambda = 0.2.
  s.profiles = {{0.1, 1.0, 0.8}, {0.5, 1.0, 0.8}};
  const PayoffMatrix general = build_payoff_matrix(s);
  const PayoffMatrix simplified = build_payoff_matrix(worked_scenario());
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(general.u_alice[i][j] ==
            doctest::Approx(simplified.u_alice[i][j]).epsilon(1e-12));
      CHECK(general.u_bob[i][j] ==
            doctest::Approx(simplified.u_bob[i][j]).epsilon(1e-12));
    }
}

TEST_CASE("validate_scenario passes the worked instance") {
  const ValidationReport report = validate_scenario(worked_scenario());
  CHECK(report.hard_ok());
  CHECK(report.strict_ok());
  CHECK(report.count(CheckStatus::kWarning) == 0);
}

TEST_CASE("validate_scenario rejects non-increasing betas") {
  Scenario s = worked_scenario();
  s.spaces.betas = {0.5, 0.5};
  const ValidationReport report = validate_scenario(s);
  CHECK_FALSE(report.hard_ok());
  CHECK(report.first_failure().find("betas-increasing") != std::string::npos);
  CHECK_THROWS_AS(require_valid(s), GameError);
  try {
    require_valid(s);
  } catch (const GameError& e) {
    CHECK(e.name() == "invalid-scenario");
  }
}

TEST_CASE("validate_scenario warns on convention-violating robustness") {
  Scenario s = worked_scenario();
  s.robustness.r = {{0.9, 0.1}, {0.7, 0.6}};
  const ValidationReport report = validate_scenario(s);
  CHECK(report.hard_ok());
  CHECK_FALSE(report.strict_ok());
  bool warned = false;
  for (const ValidationCheck& check : report.checks)
    if (check.name == "convention-col1-robustness-gain" &&
        check.status == CheckStatus::kWarning)
      warned = true;
  CHECK(warned);
}

TEST_CASE("validate_scenario flags rate-domain violations as hard errors") {
  Scenario s = worked_scenario();
  s.costs.lambda = 3.0;  // 1 - 3*0.5 < 0
  const ValidationReport report = validate_scenario(s);
  CHECK_FALSE(report.hard_ok());
  CHECK(report.first_failure().find("accuracy-loss-domain") != std::string::npos);
}

TEST_CASE("validate_scenario checks profile consistency in general mode") {
  Scenario s = worked_scenario();
  s.csr_mode = CsrMode::kGeneralProfile;
  SUBCASE("missing profiles") {
    CHECK_FALSE(validate_scenario(s).hard_ok());
  }
  SUBCASE("mismatched alpha") {
    s.profiles = {{0.2, 1.0, 0.8}, {0.5, 1.0, 0.8}};
    CHECK_FALSE(validate_scenario(s).hard_ok());
  }
  SUBCASE("consistent profiles pass") {
    s.profiles = {{0.1, 1.0, 0.8}, {0.5, 1.0, 0.8}};
    CHECK(validate_scenario(s).hard_ok());
  }
}

TEST_CASE("validate_scenario notes non-monotone robustness rows") {
  Scenario s = worked_scenario();
  s.robustness.r = {{0.6, 0.7}, {0.9, 0.95}};
  const ValidationReport report = validate_scenario(s);
  CHECK(report.hard_ok());
  CHECK(report.count(CheckStatus::kNote) == 1);
}
