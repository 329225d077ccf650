#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "wmgame/equilibrium.hpp"
#include "wmgame/game_core.hpp"
#include "wmgame/profiles.hpp"
#include "wmgame/scenario.hpp"

namespace wmgame {

// Document layout: alphas (array), betas (array), robustness (array of
// arrays), costs (object with the ten cost keys), csr_mode (string),
// optional profiles (array of {alpha, p, q}).
Scenario scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const Scenario& scenario);

Scenario load_scenario(const std::string& path);

nlohmann::json report_to_json(const EquilibriumReport& report,
                              const ValidationReport& validation);

// Header i,j,u_alice,u_bob; 1-based indices, row-major, shortest
// round-trip decimals.
void write_payoff_csv(const PayoffMatrix& matrix, std::ostream& out);
void write_payoff_csv(const PayoffMatrix& matrix, const std::string& path);

struct FitManifestEntry {
  double alpha = 0.0;
  std::string test_path;
  std::string trigger_path;
};

// Manifest: JSON array of {alpha, test, trigger}; relative file paths are
// resolved against the manifest's directory.
std::vector<FitManifestEntry> load_fit_manifest(const std::string& path);

EvaluationSet load_prediction_file(const std::string& path, EvaluationKind kind);

}  // namespace wmgame
