#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace wmgame {

// One defender option: watermark with embedding strength alpha (0 = no embedding).
struct DefenderStrategy {
  std::size_t index = 0;
  double alpha = 0.0;
};

// One attacker option: remove with attack strength beta (0 = no removal attempt).
struct AttackerStrategy {
  std::size_t index = 0;
  double beta = 0.0;
};

struct StrategySpaces {
  std::vector<double> alphas;
  std::vector<double> betas;

  std::size_t n() const { return alphas.size(); }
  std::size_t m() const { return betas.size(); }
};

// r[i][j]: probability the watermark survives attack beta_j when embedded at alpha_i.
struct RobustnessMatrix {
  std::vector<std::vector<double>> r;

  std::size_t rows() const { return r.size(); }
  std::size_t cols() const { return r.empty() ? 0 : r.front().size(); }
  double at(std::size_t i, std::size_t j) const { return r[i][j]; }
};

struct CostParameters {
  double i_def = 0.0;       // defender's one-off embedding cost
  double i_att = 0.0;       // attacker's one-off removal cost
  double o_def = 0.0;       // defender's per-strength operational cost weight
  double o_att = 0.0;       // attacker's per-strength operational cost weight
  double r_def_minus = 0.0; // defender's negative reward weight
  double r_def_plus = 0.0;  // defender's positive reward weight
  double r_att_minus = 0.0; // attacker's negative reward weight
  double r_att_plus = 0.0;  // attacker's positive reward weight
  double k = 0.0;           // shared model-degradation slope
  double lambda = 0.0;      // accuracy-loss slope of embedding strength
};

// How the computing success rate is obtained: from the linear-in-alpha
// simplification, or from measured model profiles (p_i, q_i).
enum class CsrMode { kSimplifiedLambda, kGeneralProfile };

// Measured behaviour of a model watermarked at strength alpha:
// p = agreement with the clean model on test data, q = trigger accuracy.
struct ModelProfile {
  double alpha = 0.0;
  double p = 1.0;
  double q = 0.0;
};

struct Scenario {
  StrategySpaces spaces;
  RobustnessMatrix robustness;
  CostParameters costs;
  CsrMode csr_mode = CsrMode::kSimplifiedLambda;
  std::vector<ModelProfile> profiles;  // one per alpha in general-profile mode
};

struct PayoffMatrix {
  std::vector<std::vector<double>> u_alice;  // defender utilities, [i][j]
  std::vector<std::vector<double>> u_bob;    // attacker utilities, [i][j]
  std::string scenario_digest;

  std::size_t rows() const { return u_alice.size(); }
  std::size_t cols() const { return u_alice.empty() ? 0 : u_alice.front().size(); }
};

}  // namespace wmgame
