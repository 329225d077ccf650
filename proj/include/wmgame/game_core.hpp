#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wmgame/scenario.hpp"

namespace wmgame {

// Probability that the owner's verification succeeds, from measured rates:
// (1-beta)[(1-alpha)p + alpha q] + beta r.
double csr_general(double alpha, double p, double q, double beta, double r);

// Same quantity under the linear accuracy-loss model: (1-beta)(1-lambda*alpha) + beta r.
double csr_simplified(double alpha, double lambda, double beta, double r);

// Probability the attacker ends up with an unverifiable model: 1 - r.
double attack_success_rate(double r);

// Joint loss of model value caused by embedding and removal: k(alpha+beta).
double shared_degradation_cost(double k, double alpha, double beta);

double alice_payoff(const Scenario& scenario, std::size_t i, std::size_t j);
double bob_payoff(const Scenario& scenario, std::size_t i, std::size_t j);

PayoffMatrix build_payoff_matrix(const Scenario& scenario);

std::string scenario_digest(const Scenario& scenario);

enum class CheckStatus { kPass, kNote, kWarning, kFailure };

struct ValidationCheck {
  std::string name;
  CheckStatus status = CheckStatus::kPass;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool hard_ok() const;
  bool strict_ok() const;  // also fails on warnings
  std::size_t count(CheckStatus status) const;
  std::string first_failure() const;
};

ValidationReport validate_scenario(const Scenario& scenario);

// Throws invalid-scenario (validation category) when any hard check fails.
void require_valid(const Scenario& scenario);

}  // namespace wmgame
