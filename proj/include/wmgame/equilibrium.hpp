#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wmgame/scenario.hpp"

namespace wmgame {

enum class Player { kAlice, kBob };

struct MixedProfile {
  std::vector<double> alice_probs;
  std::vector<double> bob_probs;
};

// Utility differences between the four cells of a 2x2 game, 1-based naming:
// d_bob_2star    = U_B(2,1) - U_B(2,2)   (Bob's gain from not attacking, row 2)
// d_bob_star1    = U_B(1,1) - U_B(2,1)
// d_bob_star2    = U_B(1,2) - U_B(2,2)
// d_alice_star2  = U_A(1,2) - U_A(2,2)   (Alice's gain from weak embedding, col 2)
// d_alice_1star  = U_A(1,1) - U_A(1,2)
// d_alice_2star  = U_A(2,1) - U_A(2,2)
struct PayoffDeltas {
  double d_bob_2star = 0.0;
  double d_bob_star1 = 0.0;
  double d_bob_star2 = 0.0;
  double d_alice_star2 = 0.0;
  double d_alice_1star = 0.0;
  double d_alice_2star = 0.0;
};

// Differences of the raw scenario parameters that drive the closed forms.
struct StructuralDeltas {
  double d_r_star1 = 0.0;  // r11 - r21
  double d_r_star2 = 0.0;  // r12 - r22
  double d_r_1star = 0.0;  // r11 - r12
  double d_r_2star = 0.0;  // r21 - r22
  double d_alpha = 0.0;    // alpha1 - alpha2
  double d_beta = 0.0;     // beta1 - beta2
  double varrho = 0.0;     // lambda*d_alpha*(1 - beta2) - beta2*d_r_star2
  double rho = 0.0;        // lambda*d_alpha*d_beta + beta1*d_r_star1 - beta2*d_r_star2
};

std::vector<std::size_t> best_responses(const PayoffMatrix& matrix, Player player,
                                        std::size_t opponent_index);

// All cells where both strategies are weak best responses, row-major order.
std::vector<std::pair<std::size_t, std::size_t>> pure_equilibria(
    const PayoffMatrix& matrix);

PayoffDeltas payoff_deltas(const PayoffMatrix& matrix);

// Same six quantities, computed directly from the scenario parameters without
// ever forming the payoff matrix. Simplified mode, 2x2 only.
PayoffDeltas expansion_deltas(const Scenario& scenario);

StructuralDeltas structural_deltas(const Scenario& scenario);

// Interior mixed equilibrium of a 2x2 bimatrix from the indifference
// conditions: Pr{alpha1} = -d_bob_2star / (d_bob_star1 - d_bob_star2),
// Pr{beta1} = -d_alice_star2 / (d_alice_1star - d_alice_2star).
MixedProfile mixed_2x2_from_matrix(const PayoffMatrix& matrix);

// Same equilibrium from the scenario parameters (general closed form).
MixedProfile mixed_2x2_closed_form(const Scenario& scenario);

// Shortest route, valid when o_att = k*r_att_plus and o_def = k*r_def_plus:
// Pr{alpha1} = (k*d_beta + d_r_2star) / (d_r_star2 - d_r_star1),
// Pr{beta1}  = (k*d_alpha + varrho) / rho.
MixedProfile mixed_2x2_simplified(const Scenario& scenario);

// (bob_residual, alice_residual): LHS - RHS of the two indifference
// conditions under the given profile. Zero at an interior equilibrium.
std::pair<double, double> indifference_residuals(const PayoffMatrix& matrix,
                                                 const MixedProfile& profile);

struct OracleEquilibrium {
  MixedProfile profile;
  std::size_t alice_support = 0;
  std::size_t bob_support = 0;
  // Max pairwise spread of in-support expected payoffs, (bob, alice).
  std::pair<double, double> residuals{0.0, 0.0};
};

struct OracleResult {
  std::vector<OracleEquilibrium> equilibria;
  bool degenerate = false;  // duplicate profiles met during enumeration
};

// Support enumeration over equal-size supports, N, M <= 8.
OracleResult support_enumeration(const PayoffMatrix& matrix);

enum class MixedMethod {
  kClosedFormSimplified,
  kClosedFormGeneral,
  kMatrixIndifference,
  kOracle,
};

enum class SolveMethod { kAuto, kSimplified, kGeneral, kMatrix, kOracle };

enum class RegionClass { kMixed, kPureOnly, kDegenerate, kOutOfDomain };

std::string to_string(MixedMethod method);
std::string to_string(RegionClass cls);

struct EquilibriumReport {
  std::vector<std::pair<std::size_t, std::size_t>> pure;
  std::optional<MixedProfile> mixed;
  std::optional<MixedMethod> mixed_method;
  std::optional<std::pair<double, double>> residuals;
  RegionClass feasibility = RegionClass::kOutOfDomain;
  std::vector<std::string> diagnostics;  // why ladder rungs were skipped
  bool degenerate_supports = false;
  std::string scenario_digest;
};

// Full solve: pure enumeration plus one mixed profile when obtainable.
// kAuto walks simplified -> general -> matrix -> oracle, collecting the
// reason each rung fails; a forced method propagates its error instead.
EquilibriumReport solve(const Scenario& scenario,
                        SolveMethod method = SolveMethod::kAuto);

}  // namespace wmgame
