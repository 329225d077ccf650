#include "wmgame/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <unordered_map>

#include "wmgame/error.hpp"

namespace wmgame {

namespace {

void require_kind(const EvaluationSet& set, EvaluationKind kind,
                  const char* what) {
  if (set.kind != kind) {
    std::ostringstream os;
    os << what << " must be a " << (kind == EvaluationKind::kTest ? "test" : "trigger")
       << " set";
    throw GameError(ErrorCategory::kValidation, "wrong-kind", os.str());
  }
}

void require_nonempty(const EvaluationSet& set, const char* what) {
  if (set.records.empty()) {
    throw GameError(ErrorCategory::kValidation, "empty-set",
                    std::string(what) + " has no records");
  }
}

double label_accuracy(const EvaluationSet& set) {
  std::size_t hits = 0;
  for (const PredictionRecord& rec : set.records)
    if (rec.prediction == rec.label) ++hits;
  return static_cast<double>(hits) / static_cast<double>(set.records.size());
}

}  // namespace

double agreement_rate(const EvaluationSet& base, const EvaluationSet& marked) {
  require_kind(base, EvaluationKind::kTest, "base");
  require_kind(marked, EvaluationKind::kTest, "marked");
  require_nonempty(base, "base");
  require_nonempty(marked, "marked");
  if (base.records.size() != marked.records.size())
    throw GameError(ErrorCategory::kValidation, "mismatched-sample-ids",
                    "sets differ in size");

  std::unordered_map<std::string, int> base_pred;
  base_pred.reserve(base.records.size());
  for (const PredictionRecord& rec : base.records) {
    if (!base_pred.emplace(rec.sample_id, rec.prediction).second)
      throw GameError(ErrorCategory::kValidation, "mismatched-sample-ids",
                      "duplicate sample_id '" + rec.sample_id + "' in base set");
  }
  std::size_t hits = 0;
  std::size_t seen = 0;
  std::unordered_map<std::string, bool> used;
  used.reserve(marked.records.size());
  for (const PredictionRecord& rec : marked.records) {
    auto it = base_pred.find(rec.sample_id);
    if (it == base_pred.end())
      throw GameError(ErrorCategory::kValidation, "mismatched-sample-ids",
                      "sample_id '" + rec.sample_id + "' missing from base set");
    if (!used.emplace(rec.sample_id, true).second)
      throw GameError(ErrorCategory::kValidation, "mismatched-sample-ids",
                      "duplicate sample_id '" + rec.sample_id + "' in marked set");
    if (it->second == rec.prediction) ++hits;
    ++seen;
  }
  return static_cast<double>(hits) / static_cast<double>(seen);
}

double trigger_accuracy(const EvaluationSet& set) {
  require_kind(set, EvaluationKind::kTrigger, "set");
  require_nonempty(set, "set");
  return label_accuracy(set);
}

ModelProfile estimate_profile(double alpha, const EvaluationSet& test,
                              const EvaluationSet& trigger) {
  require_kind(test, EvaluationKind::kTest, "test");
  require_kind(trigger, EvaluationKind::kTrigger, "trigger");
  require_nonempty(test, "test");
  require_nonempty(trigger, "trigger");
  if (!(std::isfinite(alpha) && alpha >= 0.0 && alpha <= 1.0))
    throw GameError(ErrorCategory::kValidation, "domain-error",
                    "alpha must lie in [0, 1]");
  ModelProfile profile;
  profile.alpha = alpha;
  profile.p = label_accuracy(test);
  profile.q = label_accuracy(trigger);
  return profile;
}

std::vector<LambdaCoefficient> lambda_coefficients(
    const std::vector<ModelProfile>& profiles) {
  std::vector<LambdaCoefficient> out;
  for (const ModelProfile& prof : profiles) {
    if (prof.alpha == 0.0) continue;
    const double lambda =
        (1.0 - (1.0 - prof.alpha) * prof.p - prof.alpha * prof.q) / prof.alpha;
    out.push_back({prof.alpha, lambda});
  }
  if (out.empty())
    throw GameError(ErrorCategory::kValidation, "all-alphas-zero",
                    "no profile with alpha > 0 to fit");
  return out;
}

double fit_lambda(const std::vector<ModelProfile>& profiles, double tol) {
  const std::vector<LambdaCoefficient> coeffs = lambda_coefficients(profiles);
  double mean = 0.0;
  for (const LambdaCoefficient& c : coeffs) mean += c.lambda;
  mean /= static_cast<double>(coeffs.size());
  double spread = 0.0;
  for (const LambdaCoefficient& c : coeffs)
    spread = std::max(spread, std::abs(c.lambda - mean));
  if (spread > tol) {
    std::ostringstream os;
    os << "lambda spread " << spread << " exceeds tolerance " << tol;
    throw GameError(ErrorCategory::kSolver, "assumption-failure", os.str());
  }
  return mean;
}

BlendBoundsReport bounds_check(const ModelProfile& profile) {
  BlendBoundsReport report;
  report.blended = (1.0 - profile.alpha) * profile.p + profile.alpha * profile.q;
  report.lower = std::min(profile.p, profile.q);
  report.upper = std::max(profile.p, profile.q);
  report.pass = report.blended >= report.lower && report.blended <= report.upper;
  return report;
}

std::vector<PredictionRecord> read_prediction_csv(std::istream& in,
                                                  const std::string& source) {
  std::string line;
  auto chomp = [](std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
  };
  if (!std::getline(in, line))
    throw GameError(ErrorCategory::kParse, "parse-error",
                    source + ": empty file");
  chomp(line);
  if (line != "sample_id,label,prediction")
    throw GameError(ErrorCategory::kParse, "parse-error",
                    source + ": expected header sample_id,label,prediction");

  auto parse_class = [&source](const std::string& field, std::size_t line_no,
                               const char* what) {
    if (field.empty() || field.size() > 9 ||
        field.find_first_not_of("0123456789") != std::string::npos) {
      std::ostringstream os;
      os << source << ":" << line_no << ": " << what << " '" << field
         << "' is not a nonnegative integer";
      throw GameError(ErrorCategory::kParse, "parse-error", os.str());
    }
    return std::stoi(field);
  };

  std::vector<PredictionRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    chomp(line);
    if (line.empty()) continue;
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = c1 == std::string::npos ? std::string::npos
                                                   : line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos ||
        line.find(',', c2 + 1) != std::string::npos) {
      std::ostringstream os;
      os << source << ":" << line_no << ": expected 3 comma-separated fields";
      throw GameError(ErrorCategory::kParse, "parse-error", os.str());
    }
    PredictionRecord rec;
    rec.sample_id = line.substr(0, c1);
    if (rec.sample_id.empty()) {
      std::ostringstream os;
      os << source << ":" << line_no << ": empty sample_id";
      throw GameError(ErrorCategory::kParse, "parse-error", os.str());
    }
    rec.label = parse_class(line.substr(c1 + 1, c2 - c1 - 1), line_no, "label");
    rec.prediction = parse_class(line.substr(c2 + 1), line_no, "prediction");
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace wmgame
