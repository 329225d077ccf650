#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wmgame/error.hpp"
#include "wmgame/format.hpp"
#include "wmgame/game_core.hpp"
#include "wmgame/profiles.hpp"
#include "wmgame/region.hpp"
#include "wmgame/scenario_io.hpp"

namespace {

using namespace wmgame;

int exit_code_for(const GameError& e) {
  switch (e.category()) {
    case ErrorCategory::kUsage:
    case ErrorCategory::kParse:
      return 1;
    case ErrorCategory::kValidation:
      return 2;
    case ErrorCategory::kSolver:
      return 3;
    case ErrorCategory::kIo:
      return 4;
  }
  return 1;
}

std::string display(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

const char* status_word(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kNote:
      return "note";
    case CheckStatus::kWarning:
      return "warning";
    case CheckStatus::kFailure:
      return "failure";
  }
  return "unknown";
}

int cmd_validate(const std::string& scenario_path, bool strict) {
  const Scenario scenario = load_scenario(scenario_path);
  const ValidationReport report = validate_scenario(scenario);
  for (const ValidationCheck& check : report.checks)
    std::cout << status_word(check.status) << " " << check.name << ": "
              << check.detail << "\n";
  const std::size_t warnings = report.count(CheckStatus::kWarning);
  std::cout << "result: " << (report.hard_ok() ? "pass" : "fail") << " ("
            << warnings << " warnings)\n";
  if (!report.hard_ok())
    throw GameError(ErrorCategory::kValidation, "invalid-scenario",
                    report.first_failure());
  if (strict && warnings > 0) {
    std::string first;
    for (const ValidationCheck& check : report.checks)
      if (check.status == CheckStatus::kWarning) {
        first = check.name + ": " + check.detail;
        break;
      }
    throw GameError(ErrorCategory::kValidation, "invalid-scenario",
                    "strict mode rejects warning " + first);
  }
  return 0;
}

int cmd_payoff(const std::string& scenario_path, const std::string& output) {
  const Scenario scenario = load_scenario(scenario_path);
  const PayoffMatrix matrix = build_payoff_matrix(scenario);
  if (output == "-")
    write_payoff_csv(matrix, std::cout);
  else
    write_payoff_csv(matrix, output);
  return 0;
}

SolveMethod parse_method(const std::string& name) {
  if (name == "auto") return SolveMethod::kAuto;
  if (name == "simplified") return SolveMethod::kSimplified;
  if (name == "general") return SolveMethod::kGeneral;
  if (name == "matrix") return SolveMethod::kMatrix;
  return SolveMethod::kOracle;
}

void print_profile_line(const char* who, const std::vector<double>& probs) {
  std::cout << who << " = (";
  for (std::size_t i = 0; i < probs.size(); ++i)
    std::cout << (i ? ", " : "") << display(probs[i]);
  std::cout << ")";
}

int cmd_solve(const std::string& scenario_path, const std::string& method,
              bool as_json) {
  const Scenario scenario = load_scenario(scenario_path);
  const ValidationReport validation = validate_scenario(scenario);
  const EquilibriumReport report = solve(scenario, parse_method(method));

  if (as_json) {
    std::cout << report_to_json(report, validation).dump(2) << "\n";
    return 0;
  }

  std::cout << "scenario digest: " << report.scenario_digest << "\n";
  std::cout << "pure equilibria:";
  if (report.pure.empty()) std::cout << " none";
  for (const auto& [i, j] : report.pure)
    std::cout << " (" << i + 1 << "," << j + 1 << ")";
  std::cout << "\n";
  if (report.mixed) {
    std::cout << "mixed profile: ";
    print_profile_line("alice", report.mixed->alice_probs);
    std::cout << "; ";
    print_profile_line("bob", report.mixed->bob_probs);
    std::cout << "\nmethod: " << to_string(*report.mixed_method) << "\n";
  } else {
    std::cout << "mixed profile: none\n";
  }
  if (report.residuals)
    std::cout << "residuals: bob = " << display(report.residuals->first)
              << "; alice = " << display(report.residuals->second) << "\n";
  std::cout << "feasibility: " << to_string(report.feasibility) << "\n";
  if (report.degenerate_supports)
    std::cout << "note: duplicate oracle supports detected\n";
  for (const std::string& note : report.diagnostics)
    std::cout << "diagnostic: " << note << "\n";
  bool any_warning = false;
  for (const ValidationCheck& check : validation.checks)
    if (check.status == CheckStatus::kWarning) {
      std::cout << "warning " << check.name << ": " << check.detail << "\n";
      any_warning = true;
    }
  if (!any_warning) std::cout << "warnings: none\n";
  return 0;
}

int cmd_fit(const std::string& manifest_path, double tol) {
  const std::vector<FitManifestEntry> entries = load_fit_manifest(manifest_path);
  std::vector<ModelProfile> profiles;
  for (const FitManifestEntry& entry : entries) {
    const EvaluationSet test =
        load_prediction_file(entry.test_path, EvaluationKind::kTest);
    const EvaluationSet trigger =
        load_prediction_file(entry.trigger_path, EvaluationKind::kTrigger);
    profiles.push_back(estimate_profile(entry.alpha, test, trigger));
  }
  const std::vector<LambdaCoefficient> coeffs = lambda_coefficients(profiles);
  std::size_t next_coeff = 0;
  for (const ModelProfile& prof : profiles) {
    std::cout << "alpha = " << format_double(prof.alpha)
              << " p = " << format_double(prof.p)
              << " q = " << format_double(prof.q);
    if (prof.alpha > 0.0 && next_coeff < coeffs.size())
      std::cout << " lambda_i = " << format_double(coeffs[next_coeff++].lambda);
    else
      std::cout << " lambda_i = skipped (alpha = 0)";
    std::cout << "\n";
  }
  const double fitted = fit_lambda(profiles, tol);
  double spread = 0.0;
  for (const LambdaCoefficient& c : coeffs)
    spread = std::max(spread, std::abs(c.lambda - fitted));
  std::cout << "lambda = " << format_double(fitted)
            << " spread = " << format_double(spread)
            << " tol = " << format_double(tol) << " profiles = " << coeffs.size()
            << " skipped = " << profiles.size() - coeffs.size() << "\n";
  return 0;
}

SweepAxis parse_axis(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (true) {
    const std::size_t colon = text.find(':', begin);
    if (colon == std::string::npos) {
      parts.push_back(text.substr(begin));
      break;
    }
    parts.push_back(text.substr(begin, colon - begin));
    begin = colon + 1;
  }
  if (parts.size() != 4)
    throw GameError(ErrorCategory::kUsage, "invalid-spec",
                    "--axis needs <path>:<start>:<end>:<steps>, got '" + text +
                        "'");
  SweepAxis axis;
  axis.path = parts[0];
  axis.start = parse_double(parts[1], "--axis start");
  axis.end = parse_double(parts[2], "--axis end");
  if (parts[3].empty() || parts[3].size() > 7 ||
      parts[3].find_first_not_of("0123456789") != std::string::npos)
    throw GameError(ErrorCategory::kUsage, "invalid-spec",
                    "--axis steps must be a positive integer, got '" + parts[3] +
                        "'");
  axis.steps = static_cast<std::size_t>(std::stoul(parts[3]));
  return axis;
}

int cmd_region(const std::string& scenario_path,
               const std::vector<std::string>& axis_args,
               const std::string& csv_path, const std::string& svg_path,
               unsigned threads) {
  const Scenario scenario = load_scenario(scenario_path);
  SweepSpec spec;
  spec.base = scenario;
  for (const std::string& arg : axis_args) spec.axes.push_back(parse_axis(arg));
  if (!svg_path.empty() && spec.axes.size() != 2)
    throw GameError(ErrorCategory::kUsage, "wrong-axis-count",
                    "--svg needs exactly 2 axes");

  const std::vector<RegionPoint> points = scan(spec, threads);
  std::size_t tallies[4] = {0, 0, 0, 0};
  for (const RegionPoint& pt : points) ++tallies[static_cast<int>(pt.cls)];
  std::cout << "points: " << points.size() << " (mixed: " << tallies[0]
            << ", pure-only: " << tallies[1] << ", degenerate: " << tallies[2]
            << ", out-of-domain: " << tallies[3] << ")\n";
  if (!csv_path.empty()) export_region_csv(points, csv_path);
  if (!svg_path.empty()) render_region_svg(points, svg_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Defender-attacker watermarking game analyzer"};
  app.require_subcommand(1);

  std::string validate_path;
  bool strict = false;
  CLI::App* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("scenario", validate_path, "scenario JSON file")
      ->required();
  validate->add_flag("--strict", strict, "treat warnings as failures");

  std::string payoff_path, payoff_out = "-";
  CLI::App* payoff =
      app.add_subcommand("payoff", "Write the payoff bimatrix as CSV");
  payoff->add_option("scenario", payoff_path, "scenario JSON file")->required();
  payoff->add_option("output", payoff_out, "output CSV path, - for stdout");

  std::string solve_path, method = "auto";
  bool as_json = false;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Compute pure and mixed equilibria");
  solve_cmd->add_option("scenario", solve_path, "scenario JSON file")
      ->required();
  solve_cmd
      ->add_option("--method", method, "auto, simplified, general, matrix, oracle")
      ->check(CLI::IsMember({"auto", "simplified", "general", "matrix",
                             "oracle"}));
  solve_cmd->add_flag("--json", as_json, "machine-readable report");

  std::string fit_path;
  double tol = 1e-6;
  CLI::App* fit = app.add_subcommand(
      "fit", "Estimate model profiles and the accuracy-loss slope");
  fit->add_option("manifest", fit_path, "JSON manifest of prediction files")
      ->required();
  fit->add_option("--tol", tol, "max allowed per-profile slope spread");

  std::string region_path, csv_out, svg_out;
  std::vector<std::string> axis_args;
  unsigned threads = 1;
  CLI::App* region =
      app.add_subcommand("region", "Sweep parameters and map the mixed region");
  region->add_option("scenario", region_path, "scenario JSON file")->required();
  region
      ->add_option("--axis", axis_args,
                   "swept axis as <path>:<start>:<end>:<steps>")
      ->required()
      ->expected(1, 2);
  region->add_option("--csv", csv_out, "write region table to this path");
  region->add_option("--svg", svg_out, "write region image to this path");
  region->add_option("--threads", threads, "worker threads for the sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage-error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (validate->parsed()) return cmd_validate(validate_path, strict);
    if (payoff->parsed()) return cmd_payoff(payoff_path, payoff_out);
    if (solve_cmd->parsed()) return cmd_solve(solve_path, method, as_json);
    if (fit->parsed()) return cmd_fit(fit_path, tol);
    if (region->parsed())
      return cmd_region(region_path, axis_args, csv_out, svg_out, threads);
  } catch (const GameError& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "internal-error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "usage-error: no subcommand\n";
  return 1;
}
