#include "wmgame/scenario_io.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>

#include "wmgame/error.hpp"
#include "wmgame/format.hpp"

namespace wmgame {

namespace {

using nlohmann::json;

[[noreturn]] void bad_document(const std::string& detail) {
  throw GameError(ErrorCategory::kParse, "parse-error", detail);
}

double number_field(const json& node, const std::string& where) {
  if (!node.is_number()) bad_document(where + " must be a number");
  return node.get<double>();
}

const json& required(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) bad_document(std::string("missing field '") + key + "'");
  return *it;
}

std::vector<double> number_array(const json& node, const std::string& where) {
  if (!node.is_array() || node.empty())
    bad_document(where + " must be a nonempty array of numbers");
  std::vector<double> out;
  out.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i)
    out.push_back(number_field(node[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

json open_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw GameError(ErrorCategory::kIo, "file-not-found", "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw GameError(ErrorCategory::kParse, "parse-error",
                    path + ": " + e.what());
  }
}

}  // namespace

Scenario scenario_from_json(const json& doc) {
  if (!doc.is_object()) bad_document("scenario document must be an object");
  static const std::set<std::string> known = {"alphas",    "betas", "robustness",
                                              "costs",     "csr_mode",
                                              "profiles"};
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (!known.count(it.key()))
      bad_document("unknown field '" + it.key() + "'");

  Scenario s;
  s.spaces.alphas = number_array(required(doc, "alphas"), "alphas");
  s.spaces.betas = number_array(required(doc, "betas"), "betas");

  const json& rob = required(doc, "robustness");
  if (!rob.is_array() || rob.empty())
    bad_document("robustness must be a nonempty array of rows");
  for (std::size_t i = 0; i < rob.size(); ++i)
    s.robustness.r.push_back(
        number_array(rob[i], "robustness[" + std::to_string(i) + "]"));

  const json& costs = required(doc, "costs");
  if (!costs.is_object()) bad_document("costs must be an object");
  static const char* cost_keys[10] = {
      "i_def",       "i_att",      "o_def",       "o_att",      "r_def_minus",
      "r_def_plus",  "r_att_minus", "r_att_plus", "k",          "lambda"};
  for (auto it = costs.begin(); it != costs.end(); ++it) {
    bool ok = false;
    for (const char* key : cost_keys) ok = ok || it.key() == key;
    if (!ok) bad_document("unknown cost field '" + it.key() + "'");
  }
  s.costs.i_def = number_field(required(costs, "i_def"), "costs.i_def");
  s.costs.i_att = number_field(required(costs, "i_att"), "costs.i_att");
  s.costs.o_def = number_field(required(costs, "o_def"), "costs.o_def");
  s.costs.o_att = number_field(required(costs, "o_att"), "costs.o_att");
  s.costs.r_def_minus =
      number_field(required(costs, "r_def_minus"), "costs.r_def_minus");
  s.costs.r_def_plus =
      number_field(required(costs, "r_def_plus"), "costs.r_def_plus");
  s.costs.r_att_minus =
      number_field(required(costs, "r_att_minus"), "costs.r_att_minus");
  s.costs.r_att_plus =
      number_field(required(costs, "r_att_plus"), "costs.r_att_plus");
  s.costs.k = number_field(required(costs, "k"), "costs.k");
  s.costs.lambda = number_field(required(costs, "lambda"), "costs.lambda");

  const json& mode = required(doc, "csr_mode");
  if (!mode.is_string()) bad_document("csr_mode must be a string");
  const std::string mode_text = mode.get<std::string>();
  if (mode_text == "simplified-lambda")
    s.csr_mode = CsrMode::kSimplifiedLambda;
  else if (mode_text == "general-profile")
    s.csr_mode = CsrMode::kGeneralProfile;
  else
    bad_document("csr_mode must be simplified-lambda or general-profile, got '" +
                 mode_text + "'");

  if (doc.contains("profiles")) {
    const json& profs = doc["profiles"];
    if (!profs.is_array()) bad_document("profiles must be an array");
    for (std::size_t i = 0; i < profs.size(); ++i) {
      const json& p = profs[i];
      const std::string where = "profiles[" + std::to_string(i) + "]";
      if (!p.is_object()) bad_document(where + " must be an object");
      for (auto it = p.begin(); it != p.end(); ++it)
        if (it.key() != "alpha" && it.key() != "p" && it.key() != "q")
          bad_document(where + " has unknown field '" + it.key() + "'");
      ModelProfile mp;
      mp.alpha = number_field(required(p, "alpha"), where + ".alpha");
      mp.p = number_field(required(p, "p"), where + ".p");
      mp.q = number_field(required(p, "q"), where + ".q");
      s.profiles.push_back(mp);
    }
  }
  return s;
}

json scenario_to_json(const Scenario& scenario) {
  json doc;
  doc["alphas"] = scenario.spaces.alphas;
  doc["betas"] = scenario.spaces.betas;
  doc["robustness"] = scenario.robustness.r;
  json costs;
  costs["i_def"] = scenario.costs.i_def;
  costs["i_att"] = scenario.costs.i_att;
  costs["o_def"] = scenario.costs.o_def;
  costs["o_att"] = scenario.costs.o_att;
  costs["r_def_minus"] = scenario.costs.r_def_minus;
  costs["r_def_plus"] = scenario.costs.r_def_plus;
  costs["r_att_minus"] = scenario.costs.r_att_minus;
  costs["r_att_plus"] = scenario.costs.r_att_plus;
  costs["k"] = scenario.costs.k;
  costs["lambda"] = scenario.costs.lambda;
  doc["costs"] = costs;
  doc["csr_mode"] = scenario.csr_mode == CsrMode::kSimplifiedLambda
                        ? "simplified-lambda"
                        : "general-profile";
  if (!scenario.profiles.empty()) {
    json profs = json::array();
    for (const ModelProfile& p : scenario.profiles)
      profs.push_back({{"alpha", p.alpha}, {"p", p.p}, {"q", p.q}});
    doc["profiles"] = profs;
  }
  return doc;
}

Scenario load_scenario(const std::string& path) {
  return scenario_from_json(open_json(path));
}

json report_to_json(const EquilibriumReport& report,
                    const ValidationReport& validation) {
  json doc;
  doc["digest"] = report.scenario_digest;
  json pure = json::array();
  for (const auto& [i, j] : report.pure)
    pure.push_back(json::array({i + 1, j + 1}));
  doc["pure"] = pure;
  if (report.mixed) {
    doc["mixed"] = {{"alice_probs", report.mixed->alice_probs},
                    {"bob_probs", report.mixed->bob_probs}};
  } else {
    doc["mixed"] = nullptr;
  }
  doc["method"] =
      report.mixed_method ? json(to_string(*report.mixed_method)) : json(nullptr);
  doc["residuals"] = report.residuals
                         ? json(json::array(
                               {report.residuals->first, report.residuals->second}))
                         : json(nullptr);
  doc["feasibility"] = to_string(report.feasibility);
  doc["diagnostics"] = report.diagnostics;
  doc["degenerate_supports"] = report.degenerate_supports;
  json warnings = json::array();
  for (const ValidationCheck& check : validation.checks)
    if (check.status == CheckStatus::kWarning)
      warnings.push_back(check.name + ": " + check.detail);
  doc["warnings"] = warnings;
  return doc;
}

void write_payoff_csv(const PayoffMatrix& matrix, std::ostream& out) {
  out << "i,j,u_alice,u_bob\n";
  for (std::size_t i = 0; i < matrix.rows(); ++i)
    for (std::size_t j = 0; j < matrix.cols(); ++j)
      out << i + 1 << "," << j + 1 << "," << format_double(matrix.u_alice[i][j])
          << "," << format_double(matrix.u_bob[i][j]) << "\n";
  if (!out)
    throw GameError(ErrorCategory::kIo, "io-failure",
                    "failed while writing payoff CSV");
}

void write_payoff_csv(const PayoffMatrix& matrix, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw GameError(ErrorCategory::kIo, "io-failure", "cannot open " + path);
  write_payoff_csv(matrix, out);
}

std::vector<FitManifestEntry> load_fit_manifest(const std::string& path) {
  const json doc = open_json(path);
  if (!doc.is_array() || doc.empty())
    bad_document(path + ": manifest must be a nonempty array");
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  auto resolve = [&base](const std::string& file) {
    std::filesystem::path p(file);
    return (p.is_absolute() ? p : base / p).string();
  };
  std::vector<FitManifestEntry> entries;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& e = doc[i];
    const std::string where = "manifest[" + std::to_string(i) + "]";
    if (!e.is_object()) bad_document(where + " must be an object");
    FitManifestEntry entry;
    entry.alpha = number_field(required(e, "alpha"), where + ".alpha");
    const json& test = required(e, "test");
    const json& trigger = required(e, "trigger");
    if (!test.is_string() || !trigger.is_string())
      bad_document(where + " test/trigger must be file paths");
    entry.test_path = resolve(test.get<std::string>());
    entry.trigger_path = resolve(trigger.get<std::string>());
    entries.push_back(std::move(entry));
  }
  return entries;
}

EvaluationSet load_prediction_file(const std::string& path,
                                   EvaluationKind kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw GameError(ErrorCategory::kIo, "file-not-found", "cannot open " + path);
  EvaluationSet set;
  set.kind = kind;
  set.records = read_prediction_csv(in, path);
  return set;
}

}  // namespace wmgame
