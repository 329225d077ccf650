#include "wmgame/game_core.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>

#include "wmgame/error.hpp"

namespace wmgame {

namespace {

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

void require_unit(double x, const char* what) {
  if (!in_unit(x)) {
    std::ostringstream os;
    os << what << " = " << x << " outside [0, 1]";
    throw GameError(ErrorCategory::kValidation, "domain-error", os.str());
  }
}

void require_nonnegative(double x, const char* what) {
  if (!(std::isfinite(x) && x >= 0.0)) {
    std::ostringstream os;
    os << what << " = " << x << " must be finite and nonnegative";
    throw GameError(ErrorCategory::kValidation, "domain-error", os.str());
  }
}

double csr_at(const Scenario& s, std::size_t i, std::size_t j) {
  const double alpha = s.spaces.alphas[i];
  const double beta = s.spaces.betas[j];
  const double r = s.robustness.at(i, j);
  if (s.csr_mode == CsrMode::kSimplifiedLambda) {
    return csr_simplified(alpha, s.costs.lambda, beta, r);
  }
  const ModelProfile& prof = s.profiles[i];
  return csr_general(alpha, prof.p, prof.q, beta, r);
}

void require_cell(const Scenario& s, std::size_t i, std::size_t j) {
  if (i >= s.spaces.n() || j >= s.spaces.m()) {
    std::ostringstream os;
    os << "cell (" << i << ", " << j << ") outside " << s.spaces.n() << "x"
       << s.spaces.m() << " game";
    throw GameError(ErrorCategory::kValidation, "dimension-error", os.str());
  }
}

class Fnv1a64 {
 public:
  void feed_bytes(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t b = 0; b < size; ++b) {
      hash_ ^= p[b];
      hash_ *= 0x100000001b3ull;
    }
  }
  void feed(double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    unsigned char raw[8];
    for (int b = 0; b < 8; ++b) raw[b] = static_cast<unsigned char>(bits >> (8 * b));
    feed_bytes(raw, 8);
  }
  void feed(std::uint64_t v) {
    unsigned char raw[8];
    for (int b = 0; b < 8; ++b) raw[b] = static_cast<unsigned char>(v >> (8 * b));
    feed_bytes(raw, 8);
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ull;
};

}  // namespace

double csr_general(double alpha, double p, double q, double beta, double r) {
  require_unit(alpha, "alpha");
  require_unit(p, "p");
  require_unit(q, "q");
  require_unit(beta, "beta");
  require_unit(r, "r");
  return (1.0 - beta) * ((1.0 - alpha) * p + alpha * q) + beta * r;
}

double csr_simplified(double alpha, double lambda, double beta, double r) {
  require_unit(alpha, "alpha");
  require_nonnegative(lambda, "lambda");
  require_unit(beta, "beta");
  require_unit(r, "r");
  if (!in_unit(1.0 - lambda * alpha)) {
    std::ostringstream os;
    os << "1 - lambda*alpha = " << 1.0 - lambda * alpha << " outside [0, 1]";
    throw GameError(ErrorCategory::kValidation, "domain-error", os.str());
  }
  return (1.0 - beta) * (1.0 - lambda * alpha) + beta * r;
}

double attack_success_rate(double r) {
  require_unit(r, "r");
  return 1.0 - r;
}

double shared_degradation_cost(double k, double alpha, double beta) {
  require_nonnegative(k, "k");
  require_unit(alpha, "alpha");
  require_unit(beta, "beta");
  return k * (alpha + beta);
}

double alice_payoff(const Scenario& scenario, std::size_t i, std::size_t j) {
  require_valid(scenario);
  require_cell(scenario, i, j);
  const CostParameters& c = scenario.costs;
  const double alpha = scenario.spaces.alphas[i];
  const double beta = scenario.spaces.betas[j];
  const double csr = csr_at(scenario, i, j);
  const double coo = shared_degradation_cost(c.k, alpha, beta);
  return -c.i_def - alpha * c.o_def - (coo + 1.0 - csr) * c.r_def_minus +
         csr * c.r_def_plus;
}

double bob_payoff(const Scenario& scenario, std::size_t i, std::size_t j) {
  require_valid(scenario);
  require_cell(scenario, i, j);
  const CostParameters& c = scenario.costs;
  const double alpha = scenario.spaces.alphas[i];
  const double beta = scenario.spaces.betas[j];
  const double asr = attack_success_rate(scenario.robustness.at(i, j));
  const double coo = shared_degradation_cost(c.k, alpha, beta);
  return -c.i_att - beta * c.o_att - (coo + 1.0 - asr) * c.r_att_minus +
         asr * c.r_att_plus;
}

PayoffMatrix build_payoff_matrix(const Scenario& scenario) {
  require_valid(scenario);
  const std::size_t n = scenario.spaces.n();
  const std::size_t m = scenario.spaces.m();
  PayoffMatrix out;
  out.u_alice.assign(n, std::vector<double>(m, 0.0));
  out.u_bob.assign(n, std::vector<double>(m, 0.0));
  const CostParameters& c = scenario.costs;
  for (std::size_t i = 0; i < n; ++i) {
    const double alpha = scenario.spaces.alphas[i];
    for (std::size_t j = 0; j < m; ++j) {
      const double beta = scenario.spaces.betas[j];
      const double r = scenario.robustness.at(i, j);
      const double csr = csr_at(scenario, i, j);
      const double asr = 1.0 - r;
      const double coo = c.k * (alpha + beta);
      out.u_alice[i][j] = -c.i_def - alpha * c.o_def -
                          (coo + 1.0 - csr) * c.r_def_minus + csr * c.r_def_plus;
      out.u_bob[i][j] = -c.i_att - beta * c.o_att -
                        (coo + 1.0 - asr) * c.r_att_minus + asr * c.r_att_plus;
    }
  }
  out.scenario_digest = scenario_digest(scenario);
  return out;
}

std::string scenario_digest(const Scenario& scenario) {
  Fnv1a64 h;
  h.feed_bytes("wmgame-scenario-v1", 18);
  h.feed(static_cast<std::uint64_t>(scenario.spaces.n()));
  h.feed(static_cast<std::uint64_t>(scenario.spaces.m()));
  for (double a : scenario.spaces.alphas) h.feed(a);
  for (double b : scenario.spaces.betas) h.feed(b);
  for (const auto& row : scenario.robustness.r)
    for (double v : row) h.feed(v);
  const CostParameters& c = scenario.costs;
  for (double v : {c.i_def, c.i_att, c.o_def, c.o_att, c.r_def_minus,
                   c.r_def_plus, c.r_att_minus, c.r_att_plus, c.k, c.lambda})
    h.feed(v);
  h.feed(static_cast<std::uint64_t>(
      scenario.csr_mode == CsrMode::kSimplifiedLambda ? 0 : 1));
  h.feed(static_cast<std::uint64_t>(scenario.profiles.size()));
  for (const ModelProfile& p : scenario.profiles) {
    h.feed(p.alpha);
    h.feed(p.p);
    h.feed(p.q);
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h.value()));
  return std::string(buf);
}

bool ValidationReport::hard_ok() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::kFailure) return false;
  return true;
}

bool ValidationReport::strict_ok() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::kFailure || c.status == CheckStatus::kWarning)
      return false;
  return true;
}

std::size_t ValidationReport::count(CheckStatus status) const {
  std::size_t n = 0;
  for (const auto& c : checks)
    if (c.status == status) ++n;
  return n;
}

std::string ValidationReport::first_failure() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::kFailure) return c.name + ": " + c.detail;
  return {};
}

ValidationReport validate_scenario(const Scenario& scenario) {
  ValidationReport report;
  auto add = [&report](std::string name, CheckStatus status, std::string detail) {
    report.checks.push_back({std::move(name), status, std::move(detail)});
  };
  auto pass_or_fail = [&add](std::string name, bool ok, std::string detail) {
    add(std::move(name), ok ? CheckStatus::kPass : CheckStatus::kFailure,
        ok ? "ok" : std::move(detail));
  };

  const StrategySpaces& sp = scenario.spaces;
  const std::size_t n = sp.n();
  const std::size_t m = sp.m();
  pass_or_fail("spaces-nonempty", n >= 1 && m >= 1,
               "both players need at least one strategy");

  auto unit_sequence = [](const std::vector<double>& xs) {
    for (double x : xs)
      if (!(std::isfinite(x) && in_unit(x))) return false;
    return true;
  };
  auto strictly_increasing = [](const std::vector<double>& xs) {
    for (std::size_t i = 1; i < xs.size(); ++i)
      if (!(xs[i] > xs[i - 1])) return false;
    return true;
  };
  pass_or_fail("alphas-range", unit_sequence(sp.alphas),
               "every alpha must be finite and in [0, 1]");
  pass_or_fail("betas-range", unit_sequence(sp.betas),
               "every beta must be finite and in [0, 1]");
  pass_or_fail("alphas-increasing", strictly_increasing(sp.alphas),
               "alphas must be strictly increasing");
  pass_or_fail("betas-increasing", strictly_increasing(sp.betas),
               "betas must be strictly increasing");

  const RobustnessMatrix& rm = scenario.robustness;
  bool shape_ok = rm.rows() == n && n >= 1;
  for (const auto& row : rm.r) shape_ok = shape_ok && row.size() == m;
  pass_or_fail("robustness-shape", shape_ok, "robustness must be an NxM grid");

  bool range_ok = true;
  for (const auto& row : rm.r)
    for (double v : row) range_ok = range_ok && std::isfinite(v) && in_unit(v);
  pass_or_fail("robustness-range", range_ok,
               "robustness entries must lie in [0, 1]");

  const CostParameters& c = scenario.costs;
  bool costs_ok = true;
  for (double v : {c.i_def, c.i_att, c.o_def, c.o_att, c.r_def_minus,
                   c.r_def_plus, c.r_att_minus, c.r_att_plus, c.k})
    costs_ok = costs_ok && std::isfinite(v) && v >= 0.0;
  pass_or_fail("costs-nonnegative", costs_ok,
               "cost and reward weights must be finite and nonnegative");
  pass_or_fail("lambda-nonnegative", std::isfinite(c.lambda) && c.lambda >= 0.0,
               "lambda must be finite and nonnegative");
  bool csr_ok = std::isfinite(c.lambda);
  for (double a : sp.alphas) csr_ok = csr_ok && in_unit(1.0 - c.lambda * a);
  pass_or_fail("accuracy-loss-domain", csr_ok,
               "1 - lambda*alpha must stay in [0, 1] for every alpha");

  if (scenario.csr_mode == CsrMode::kSimplifiedLambda) {
    if (!scenario.profiles.empty())
      add("profiles-unused", CheckStatus::kNote,
          "profiles present but ignored in simplified mode");
  } else {
    pass_or_fail("profiles-count", scenario.profiles.size() == n,
                 "general-profile mode needs one profile per alpha");
    bool prof_ok = true;
    bool match_ok = true;
    for (std::size_t i = 0; i < scenario.profiles.size(); ++i) {
      const ModelProfile& p = scenario.profiles[i];
      prof_ok = prof_ok && std::isfinite(p.p) && in_unit(p.p) &&
                std::isfinite(p.q) && in_unit(p.q) && std::isfinite(p.alpha) &&
                in_unit(p.alpha);
      if (i < n) match_ok = match_ok && std::abs(p.alpha - sp.alphas[i]) <= 1e-12;
    }
    pass_or_fail("profiles-range", prof_ok,
                 "profile alpha, p, q must lie in [0, 1]");
    pass_or_fail("profiles-alpha-match", match_ok,
                 "profile alphas must equal the strategy-space alphas");
  }

  if (report.hard_ok() && n >= 2 && m >= 2) {
    auto warn_unless = [&add](std::string name, bool ok, std::string detail) {
      add(std::move(name), ok ? CheckStatus::kPass : CheckStatus::kWarning,
          ok ? "ok" : std::move(detail));
    };
    warn_unless("convention-beta-gap", sp.betas[0] - sp.betas[1] < 0.0,
                "expected beta_1 < beta_2");
    warn_unless("convention-row2-robustness-drop",
                rm.at(1, 0) - rm.at(1, 1) > 0.0,
                "expected r[2][1] > r[2][2]: stronger attacks should degrade "
                "robustness on the watermarked row");
    warn_unless("convention-col1-robustness-gain",
                rm.at(0, 0) - rm.at(1, 0) < 0.0,
                "expected r[1][1] < r[2][1]: stronger embedding should raise "
                "robustness under weak attack");
    warn_unless("convention-col2-robustness-gain",
                rm.at(0, 1) - rm.at(1, 1) < 0.0,
                "expected r[1][2] < r[2][2]: stronger embedding should raise "
                "robustness under strong attack");
  }

  if (report.hard_ok()) {
    bool monotone = true;
    for (const auto& row : rm.r)
      for (std::size_t j = 1; j < row.size(); ++j)
        if (row[j] > row[j - 1]) monotone = false;
    if (!monotone)
      add("robustness-monotonicity", CheckStatus::kNote,
          "robustness is not non-increasing in beta; no formula assumes it");
  }

  return report;
}

void require_valid(const Scenario& scenario) {
  ValidationReport report = validate_scenario(scenario);
  if (!report.hard_ok()) {
    throw GameError(ErrorCategory::kValidation, "invalid-scenario",
                    report.first_failure());
  }
}

}  // namespace wmgame
