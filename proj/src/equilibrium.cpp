#include "wmgame/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wmgame/error.hpp"
#include "wmgame/game_core.hpp"

namespace wmgame {

namespace {

constexpr double kDenominatorFloor = 1e-12;
constexpr double kEndpointSlack = 1e-12;
constexpr double kOracleTolerance = 1e-9;
constexpr double kPivotFloor = 1e-10;

bool relatively_equal(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

void require_2x2(std::size_t n, std::size_t m) {
  if (n != 2 || m != 2) {
    std::ostringstream os;
    os << "closed forms need a 2x2 game, got " << n << "x" << m;
    throw GameError(ErrorCategory::kSolver, "dimension-error", os.str());
  }
}

void require_simplified(const Scenario& s) {
  if (s.csr_mode != CsrMode::kSimplifiedLambda) {
    throw GameError(ErrorCategory::kSolver, "mode-error",
                    "scenario closed forms need simplified-lambda mode");
  }
}

void require_cost_assumption(const Scenario& s) {
  const CostParameters& c = s.costs;
  if (!relatively_equal(c.o_att, c.k * c.r_att_plus, 1e-12) ||
      !relatively_equal(c.o_def, c.k * c.r_def_plus, 1e-12)) {
    std::ostringstream os;
    os << "needs o_att = k*r_att_plus and o_def = k*r_def_plus; got o_att = "
       << c.o_att << " vs " << c.k * c.r_att_plus << ", o_def = " << c.o_def
       << " vs " << c.k * c.r_def_plus;
    throw GameError(ErrorCategory::kSolver, "assumption-violated", os.str());
  }
}

double checked_ratio(double num, double den, const char* what) {
  if (std::abs(den) <= kDenominatorFloor) {
    std::ostringstream os;
    os << what << " denominator " << den << " within 1e-12 of zero";
    throw GameError(ErrorCategory::kSolver, "degenerate-denominator", os.str());
  }
  return num / den;
}

bool interior(double p) {
  return p > kEndpointSlack && p < 1.0 - kEndpointSlack;
}

MixedProfile interior_profile(double pr_alpha1, double pr_beta1) {
  if (!interior(pr_alpha1) || !interior(pr_beta1)) {
    std::ostringstream os;
    os << "Pr{alpha1} = " << pr_alpha1 << ", Pr{beta1} = " << pr_beta1
       << " not strictly inside (0, 1)";
    throw GameError(ErrorCategory::kSolver, "probability-out-of-range", os.str());
  }
  return MixedProfile{{pr_alpha1, 1.0 - pr_alpha1}, {pr_beta1, 1.0 - pr_beta1}};
}

// Gaussian elimination with partial pivoting; false when a pivot falls
// below the singularity threshold.
bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& x) {
  const std::size_t s = b.size();
  for (std::size_t col = 0; col < s; ++col) {
    std::size_t piv = col;
    for (std::size_t row = col + 1; row < s; ++row)
      if (std::abs(a[row][col]) > std::abs(a[piv][col])) piv = row;
    if (std::abs(a[piv][col]) < kPivotFloor) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t row = col + 1; row < s; ++row) {
      const double f = a[row][col] / a[col][col];
      for (std::size_t cc = col; cc < s; ++cc) a[row][cc] -= f * a[col][cc];
      b[row] -= f * b[col];
    }
  }
  x.assign(s, 0.0);
  for (std::size_t row = s; row-- > 0;) {
    double acc = b[row];
    for (std::size_t cc = row + 1; cc < s; ++cc) acc -= a[row][cc] * x[cc];
    x[row] = acc / a[row][row];
  }
  return true;
}

std::vector<std::vector<std::size_t>> lexicographic_subsets(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::size_t> best_responses(const PayoffMatrix& matrix, Player player,
                                        std::size_t opponent_index) {
  const std::size_t n = matrix.rows();
  const std::size_t m = matrix.cols();
  std::vector<std::size_t> out;
  if (player == Player::kAlice) {
    if (opponent_index >= m)
      throw GameError(ErrorCategory::kSolver, "dimension-error",
                      "opponent column out of range");
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
      best = std::max(best, matrix.u_alice[i][opponent_index]);
    for (std::size_t i = 0; i < n; ++i)
      if (matrix.u_alice[i][opponent_index] == best) out.push_back(i);
  } else {
    if (opponent_index >= n)
      throw GameError(ErrorCategory::kSolver, "dimension-error",
                      "opponent row out of range");
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j)
      best = std::max(best, matrix.u_bob[opponent_index][j]);
    for (std::size_t j = 0; j < m; ++j)
      if (matrix.u_bob[opponent_index][j] == best) out.push_back(j);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> pure_equilibria(
    const PayoffMatrix& matrix) {
  const std::size_t n = matrix.rows();
  const std::size_t m = matrix.cols();
  std::vector<double> col_max(m, -std::numeric_limits<double>::infinity());
  std::vector<double> row_max(n, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      col_max[j] = std::max(col_max[j], matrix.u_alice[i][j]);
      row_max[i] = std::max(row_max[i], matrix.u_bob[i][j]);
    }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (matrix.u_alice[i][j] == col_max[j] && matrix.u_bob[i][j] == row_max[i])
        out.emplace_back(i, j);
  return out;
}

PayoffDeltas payoff_deltas(const PayoffMatrix& matrix) {
  require_2x2(matrix.rows(), matrix.cols());
  const auto& ua = matrix.u_alice;
  const auto& ub = matrix.u_bob;
  PayoffDeltas d;
  d.d_bob_2star = ub[1][0] - ub[1][1];
  d.d_bob_star1 = ub[0][0] - ub[1][0];
  d.d_bob_star2 = ub[0][1] - ub[1][1];
  d.d_alice_star2 = ua[0][1] - ua[1][1];
  d.d_alice_1star = ua[0][0] - ua[0][1];
  d.d_alice_2star = ua[1][0] - ua[1][1];
  return d;
}

PayoffDeltas expansion_deltas(const Scenario& scenario) {
  require_valid(scenario);
  require_2x2(scenario.spaces.n(), scenario.spaces.m());
  require_simplified(scenario);
  const CostParameters& c = scenario.costs;
  const double a1 = scenario.spaces.alphas[0];
  const double a2 = scenario.spaces.alphas[1];
  const double b1 = scenario.spaces.betas[0];
  const double b2 = scenario.spaces.betas[1];
  const auto& r = scenario.robustness.r;
  const double rdef_sum = c.r_def_plus + c.r_def_minus;

  PayoffDeltas d;
  d.d_bob_2star = (b2 - b1) * c.o_att + (r[1][1] - r[1][0]) * c.r_att_plus -
                  (c.k * (b1 - b2) - (r[1][1] - r[1][0])) * c.r_att_minus;
  d.d_bob_star1 = (r[1][0] - r[0][0]) * c.r_att_plus -
                  (c.k * (a1 - a2) - (r[1][0] - r[0][0])) * c.r_att_minus;
  d.d_bob_star2 = (r[1][1] - r[0][1]) * c.r_att_plus -
                  (c.k * (a1 - a2) - (r[1][1] - r[0][1])) * c.r_att_minus;
  d.d_alice_star2 =
      (a2 - a1) * c.o_def + c.k * (a2 - a1) * c.r_def_minus +
      (c.lambda * (1.0 - b2) * (a2 - a1) + b2 * (r[0][1] - r[1][1])) * rdef_sum;
  d.d_alice_1star =
      c.k * (b2 - b1) * c.r_def_minus +
      ((b2 - b1) * (1.0 - c.lambda * a1) + (b1 * r[0][0] - b2 * r[0][1])) *
          rdef_sum;
  d.d_alice_2star =
      c.k * (b2 - b1) * c.r_def_minus +
      ((b2 - b1) * (1.0 - c.lambda * a2) + (b1 * r[1][0] - b2 * r[1][1])) *
          rdef_sum;
  return d;
}

StructuralDeltas structural_deltas(const Scenario& scenario) {
  require_valid(scenario);
  require_2x2(scenario.spaces.n(), scenario.spaces.m());
  const auto& r = scenario.robustness.r;
  const double b1 = scenario.spaces.betas[0];
  const double b2 = scenario.spaces.betas[1];
  StructuralDeltas d;
  d.d_r_star1 = r[0][0] - r[1][0];
  d.d_r_star2 = r[0][1] - r[1][1];
  d.d_r_1star = r[0][0] - r[0][1];
  d.d_r_2star = r[1][0] - r[1][1];
  d.d_alpha = scenario.spaces.alphas[0] - scenario.spaces.alphas[1];
  d.d_beta = b1 - b2;
  d.varrho = scenario.costs.lambda * d.d_alpha * (1.0 - b2) - b2 * d.d_r_star2;
  d.rho = scenario.costs.lambda * d.d_alpha * d.d_beta + b1 * d.d_r_star1 -
          b2 * d.d_r_star2;
  return d;
}

MixedProfile mixed_2x2_from_matrix(const PayoffMatrix& matrix) {
  const PayoffDeltas d = payoff_deltas(matrix);
  const double pr_alpha1 = checked_ratio(
      -d.d_bob_2star, d.d_bob_star1 - d.d_bob_star2, "Pr{alpha1}");
  const double pr_beta1 = checked_ratio(
      -d.d_alice_star2, d.d_alice_1star - d.d_alice_2star, "Pr{beta1}");
  return interior_profile(pr_alpha1, pr_beta1);
}

MixedProfile mixed_2x2_closed_form(const Scenario& scenario) {
  require_valid(scenario);
  require_2x2(scenario.spaces.n(), scenario.spaces.m());
  require_simplified(scenario);
  const CostParameters& c = scenario.costs;
  const StructuralDeltas d = structural_deltas(scenario);
  const double ratt_sum = c.r_att_plus + c.r_att_minus;
  const double rdef_sum = c.r_def_plus + c.r_def_minus;
  const double pr_alpha1 = checked_ratio(
      d.d_beta * c.o_att + c.k * d.d_beta * c.r_att_minus + d.d_r_2star * ratt_sum,
      (d.d_r_star2 - d.d_r_star1) * ratt_sum, "Pr{alpha1}");
  const double pr_beta1 = checked_ratio(
      d.d_alpha * c.o_def + c.k * d.d_alpha * c.r_def_minus + d.varrho * rdef_sum,
      d.rho * rdef_sum, "Pr{beta1}");
  return interior_profile(pr_alpha1, pr_beta1);
}

MixedProfile mixed_2x2_simplified(const Scenario& scenario) {
  require_valid(scenario);
  require_2x2(scenario.spaces.n(), scenario.spaces.m());
  require_simplified(scenario);
  require_cost_assumption(scenario);
  const CostParameters& c = scenario.costs;
  const StructuralDeltas d = structural_deltas(scenario);
  const double pr_alpha1 = checked_ratio(c.k * d.d_beta + d.d_r_2star,
                                         d.d_r_star2 - d.d_r_star1, "Pr{alpha1}");
  const double pr_beta1 =
      checked_ratio(c.k * d.d_alpha + d.varrho, d.rho, "Pr{beta1}");
  return interior_profile(pr_alpha1, pr_beta1);
}

std::pair<double, double> indifference_residuals(const PayoffMatrix& matrix,
                                                 const MixedProfile& profile) {
  require_2x2(matrix.rows(), matrix.cols());
  if (profile.alice_probs.size() != 2 || profile.bob_probs.size() != 2)
    throw GameError(ErrorCategory::kSolver, "dimension-error",
                    "profile must carry two probabilities per player");
  for (double p : {profile.alice_probs[0], profile.alice_probs[1],
                   profile.bob_probs[0], profile.bob_probs[1]})
    if (!(p >= 0.0 && p <= 1.0))
      throw GameError(ErrorCategory::kSolver, "domain-error",
                      "profile entries must lie in [0, 1]");
  const double sum_a = profile.alice_probs[0] + profile.alice_probs[1];
  const double sum_b = profile.bob_probs[0] + profile.bob_probs[1];
  if (std::abs(sum_a - 1.0) > 1e-9 || std::abs(sum_b - 1.0) > 1e-9)
    throw GameError(ErrorCategory::kSolver, "domain-error",
                    "profile rows must sum to 1");
  const auto& ua = matrix.u_alice;
  const auto& ub = matrix.u_bob;
  const double x0 = profile.alice_probs[0];
  const double x1 = profile.alice_probs[1];
  const double y0 = profile.bob_probs[0];
  const double y1 = profile.bob_probs[1];
  const double bob_res = x0 * (ub[0][0] - ub[0][1]) + x1 * (ub[1][0] - ub[1][1]);
  const double alice_res =
      y0 * (ua[0][0] - ua[1][0]) + y1 * (ua[0][1] - ua[1][1]);
  return {bob_res, alice_res};
}

OracleResult support_enumeration(const PayoffMatrix& matrix) {
  const std::size_t n = matrix.rows();
  const std::size_t m = matrix.cols();
  if (n == 0 || m == 0)
    throw GameError(ErrorCategory::kSolver, "dimension-error", "empty game");
  if (n > 8 || m > 8) {
    std::ostringstream os;
    os << "support enumeration is limited to 8x8 games, got " << n << "x" << m;
    throw GameError(ErrorCategory::kSolver, "size-limit-exceeded", os.str());
  }

  const auto row_supports = lexicographic_subsets(n);
  const auto col_supports = lexicographic_subsets(m);
  OracleResult result;

  for (const auto& sa : row_supports) {
    for (const auto& sb : col_supports) {
      const std::size_t s = sa.size();
      if (sb.size() != s) continue;

      // Alice's mix x makes Bob indifferent across his support.
      std::vector<std::vector<double>> ax(s, std::vector<double>(s, 0.0));
      std::vector<double> bx(s, 0.0);
      for (std::size_t e = 0; e + 1 < s; ++e)
        for (std::size_t t = 0; t < s; ++t)
          ax[e][t] = matrix.u_bob[sa[t]][sb[e]] - matrix.u_bob[sa[t]][sb[e + 1]];
      ax[s - 1].assign(s, 1.0);
      bx[s - 1] = 1.0;
      std::vector<double> x;
      if (!solve_linear(ax, bx, x)) continue;

      // Bob's mix y makes Alice indifferent across her support.
      std::vector<std::vector<double>> ay(s, std::vector<double>(s, 0.0));
      std::vector<double> by(s, 0.0);
      for (std::size_t e = 0; e + 1 < s; ++e)
        for (std::size_t u = 0; u < s; ++u)
          ay[e][u] =
              matrix.u_alice[sa[e]][sb[u]] - matrix.u_alice[sa[e + 1]][sb[u]];
      ay[s - 1].assign(s, 1.0);
      by[s - 1] = 1.0;
      std::vector<double> y;
      if (!solve_linear(ay, by, y)) continue;

      bool nonnegative = true;
      for (double v : x) nonnegative = nonnegative && v >= -kOracleTolerance;
      for (double v : y) nonnegative = nonnegative && v >= -kOracleTolerance;
      if (!nonnegative) continue;

      std::vector<double> x_full(n, 0.0), y_full(m, 0.0);
      double x_sum = 0.0, y_sum = 0.0;
      for (std::size_t t = 0; t < s; ++t) {
        x_full[sa[t]] = std::max(x[t], 0.0);
        y_full[sb[t]] = std::max(y[t], 0.0);
        x_sum += x_full[sa[t]];
        y_sum += y_full[sb[t]];
      }
      if (x_sum <= 0.0 || y_sum <= 0.0) continue;
      for (double& v : x_full) v /= x_sum;
      for (double& v : y_full) v /= y_sum;

      std::vector<double> va(n, 0.0), vb(m, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          va[i] += matrix.u_alice[i][j] * y_full[j];
          vb[j] += matrix.u_bob[i][j] * x_full[i];
        }

      double va_lo = va[sa[0]], va_hi = va[sa[0]];
      double vb_lo = vb[sb[0]], vb_hi = vb[sb[0]];
      for (std::size_t t = 0; t < s; ++t) {
        va_lo = std::min(va_lo, va[sa[t]]);
        va_hi = std::max(va_hi, va[sa[t]]);
        vb_lo = std::min(vb_lo, vb[sb[t]]);
        vb_hi = std::max(vb_hi, vb[sb[t]]);
      }
      if (va_hi - va_lo > kOracleTolerance || vb_hi - vb_lo > kOracleTolerance)
        continue;

      bool best = true;
      for (std::size_t i = 0; i < n && best; ++i)
        if (va[i] > va_hi + kOracleTolerance) best = false;
      for (std::size_t j = 0; j < m && best; ++j)
        if (vb[j] > vb_hi + kOracleTolerance) best = false;
      if (!best) continue;

      bool duplicate = false;
      for (const auto& known : result.equilibria) {
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          diff = std::max(diff, std::abs(known.profile.alice_probs[i] - x_full[i]));
        for (std::size_t j = 0; j < m; ++j)
          diff = std::max(diff, std::abs(known.profile.bob_probs[j] - y_full[j]));
        if (diff <= kOracleTolerance) {
          duplicate = true;
          break;
        }
      }
      if (duplicate) {
        result.degenerate = true;
        continue;
      }

      OracleEquilibrium eq;
      eq.profile = MixedProfile{std::move(x_full), std::move(y_full)};
      eq.alice_support = s;
      eq.bob_support = s;
      eq.residuals = {vb_hi - vb_lo, va_hi - va_lo};
      result.equilibria.push_back(std::move(eq));
    }
  }
  return result;
}

std::string to_string(MixedMethod method) {
  switch (method) {
    case MixedMethod::kClosedFormSimplified:
      return "closed-form-simplified";
    case MixedMethod::kClosedFormGeneral:
      return "closed-form-general";
    case MixedMethod::kMatrixIndifference:
      return "matrix-indifference";
    case MixedMethod::kOracle:
      return "oracle";
  }
  return "unknown";
}

std::string to_string(RegionClass cls) {
  switch (cls) {
    case RegionClass::kMixed:
      return "mixed";
    case RegionClass::kPureOnly:
      return "pure-only";
    case RegionClass::kDegenerate:
      return "degenerate";
    case RegionClass::kOutOfDomain:
      return "out-of-domain";
  }
  return "unknown";
}

namespace {

// Classification used for the report's feasibility tag; mirrors the
// simplified closed form without throwing on non-interior probabilities.
RegionClass closed_form_region(const Scenario& scenario) {
  const StructuralDeltas d = structural_deltas(scenario);
  const double den_a = d.d_r_star2 - d.d_r_star1;
  if (std::abs(den_a) <= kDenominatorFloor || std::abs(d.rho) <= kDenominatorFloor)
    return RegionClass::kDegenerate;
  const double pr_alpha1 = (scenario.costs.k * d.d_beta + d.d_r_2star) / den_a;
  const double pr_beta1 = (scenario.costs.k * d.d_alpha + d.varrho) / d.rho;
  return interior(pr_alpha1) && interior(pr_beta1) ? RegionClass::kMixed
                                                   : RegionClass::kPureOnly;
}

bool cost_assumption_holds(const CostParameters& c) {
  return relatively_equal(c.o_att, c.k * c.r_att_plus, 1e-12) &&
         relatively_equal(c.o_def, c.k * c.r_def_plus, 1e-12);
}

}  // namespace

EquilibriumReport solve(const Scenario& scenario, SolveMethod method) {
  require_valid(scenario);
  const PayoffMatrix matrix = build_payoff_matrix(scenario);
  EquilibriumReport report;
  report.scenario_digest = matrix.scenario_digest;
  report.pure = pure_equilibria(matrix);

  auto attach_mixed = [&](MixedMethod tag, const MixedProfile& profile) {
    report.mixed = profile;
    report.mixed_method = tag;
    if (matrix.rows() == 2 && matrix.cols() == 2 &&
        profile.alice_probs[0] > 0.0 && profile.alice_probs[1] > 0.0 &&
        profile.bob_probs[0] > 0.0 && profile.bob_probs[1] > 0.0) {
      report.residuals = indifference_residuals(matrix, profile);
    }
  };

  auto run_oracle = [&]() -> bool {
    const OracleResult oracle = support_enumeration(matrix);
    report.degenerate_supports = oracle.degenerate;
    for (const auto& eq : oracle.equilibria) {
      if (eq.alice_support < 2 && eq.bob_support < 2) continue;
      attach_mixed(MixedMethod::kOracle, eq.profile);
      if (!report.residuals) report.residuals = eq.residuals;
      return true;
    }
    return false;
  };

  if (method == SolveMethod::kAuto) {
    auto attempt = [&](MixedMethod tag, auto&& fn) {
      if (report.mixed) return;
      try {
        attach_mixed(tag, fn());
      } catch (const GameError& e) {
        report.diagnostics.push_back(to_string(tag) + " unavailable; " +
                                     std::string(e.what()));
      }
    };
    if (matrix.rows() == 2 && matrix.cols() == 2) {
      attempt(MixedMethod::kClosedFormSimplified,
              [&] { return mixed_2x2_simplified(scenario); });
      attempt(MixedMethod::kClosedFormGeneral,
              [&] { return mixed_2x2_closed_form(scenario); });
      attempt(MixedMethod::kMatrixIndifference,
              [&] { return mixed_2x2_from_matrix(matrix); });
    }
    if (!report.mixed) {
      try {
        run_oracle();
      } catch (const GameError& e) {
        report.diagnostics.push_back("oracle unavailable; " +
                                     std::string(e.what()));
      }
    }
  } else if (method == SolveMethod::kSimplified) {
    attach_mixed(MixedMethod::kClosedFormSimplified,
                 mixed_2x2_simplified(scenario));
  } else if (method == SolveMethod::kGeneral) {
    attach_mixed(MixedMethod::kClosedFormGeneral,
                 mixed_2x2_closed_form(scenario));
  } else if (method == SolveMethod::kMatrix) {
    attach_mixed(MixedMethod::kMatrixIndifference, mixed_2x2_from_matrix(matrix));
  } else {
    run_oracle();
  }

  const bool eligible = matrix.rows() == 2 && matrix.cols() == 2 &&
                        scenario.csr_mode == CsrMode::kSimplifiedLambda &&
                        cost_assumption_holds(scenario.costs);
  if (eligible) {
    report.feasibility = closed_form_region(scenario);
  } else if (report.mixed) {
    report.feasibility = RegionClass::kMixed;
  } else {
    bool degenerate_seen = report.degenerate_supports;
    for (const auto& note : report.diagnostics)
      if (note.find("degenerate-denominator") != std::string::npos)
        degenerate_seen = true;
    report.feasibility =
        degenerate_seen ? RegionClass::kDegenerate : RegionClass::kPureOnly;
  }

  if (report.pure.empty() && !report.mixed)
    throw GameError(ErrorCategory::kSolver, "no-equilibrium",
                    "no pure cell and no mixed profile survived; digest " +
                        report.scenario_digest);
  return report;
}

}  // namespace wmgame
