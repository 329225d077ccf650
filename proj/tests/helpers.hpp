#pragma once

#include <random>

#include "wmgame/scenario.hpp"

namespace wmtest {

// The 2x2 instance used across the suite: k=0.5, alpha=(0.1,0.5),
// beta=(0.1,0.9), lambda=0.2, r=[[0.6,0.1],[0.9,0.6]], R+=0.5, R-=0.2,
// O=0.25 for both players. Its unique equilibrium mixes 50/50 on both sides.
inline wmgame::Scenario worked_scenario() {
  wmgame::Scenario s;
  s.spaces.alphas = {0.1, 0.5};
  s.spaces.betas = {0.1, 0.9};
  s.robustness.r = {{0.6, 0.1}, {0.9, 0.6}};
  s.costs.i_def = 1.0;
  s.costs.i_att = 0.5;
  s.costs.o_def = 0.25;
  s.costs.o_att = 0.25;
  s.costs.r_def_minus = 0.2;
  s.costs.r_def_plus = 0.5;
  s.costs.r_att_minus = 0.2;
  s.costs.r_att_plus = 0.5;
  s.costs.k = 0.5;
  s.costs.lambda = 0.2;
  s.csr_mode = wmgame::CsrMode::kSimplifiedLambda;
  return s;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Sorted distinct pair in [0, 1].
inline std::pair<double, double> ordered_pair(std::mt19937_64& rng) {
  double a = uniform(rng, 0.0, 1.0);
  double b = uniform(rng, 0.0, 1.0);
  while (b == a) b = uniform(rng, 0.0, 1.0);
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

// Random valid 2x2 simplified-mode scenario; lambda stays in [0, 1] so the
// accuracy-loss domain holds for every alpha.
inline wmgame::Scenario random_simplified_2x2(std::mt19937_64& rng) {
  wmgame::Scenario s;
  auto [a1, a2] = ordered_pair(rng);
  auto [b1, b2] = ordered_pair(rng);
  s.spaces.alphas = {a1, a2};
  s.spaces.betas = {b1, b2};
  s.robustness.r = {{uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 1.0)},
                    {uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 1.0)}};
  s.costs.i_def = uniform(rng, 0.0, 2.0);
  s.costs.i_att = uniform(rng, 0.0, 2.0);
  s.costs.o_def = uniform(rng, 0.0, 2.0);
  s.costs.o_att = uniform(rng, 0.0, 2.0);
  s.costs.r_def_minus = uniform(rng, 0.0, 2.0);
  s.costs.r_def_plus = uniform(rng, 0.0, 2.0);
  s.costs.r_att_minus = uniform(rng, 0.0, 2.0);
  s.costs.r_att_plus = uniform(rng, 0.0, 2.0);
  s.costs.k = uniform(rng, 0.0, 2.0);
  s.costs.lambda = uniform(rng, 0.0, 1.0);
  s.csr_mode = wmgame::CsrMode::kSimplifiedLambda;
  return s;
}

// Same population restricted to the o = k*r_plus cost assumption.
inline wmgame::Scenario random_assumption_2x2(std::mt19937_64& rng) {
  wmgame::Scenario s = random_simplified_2x2(rng);
  s.costs.o_att = s.costs.k * s.costs.r_att_plus;
  s.costs.o_def = s.costs.k * s.costs.r_def_plus;
  return s;
}

}  // namespace wmtest
