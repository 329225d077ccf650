#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wmgame/scenario.hpp"

namespace wmgame {

struct PredictionRecord {
  std::string sample_id;
  int label = 0;
  int prediction = 0;
};

enum class EvaluationKind { kTest, kTrigger };

struct EvaluationSet {
  EvaluationKind kind = EvaluationKind::kTest;
  std::vector<PredictionRecord> records;
};

// Threshold for "small positive Delta" acceptance checks: a rate passes
// when it falls short of 1 by at most delta.
struct FidelityPolicy {
  double delta = 0.0;

  bool holds(double rate) const { return 1.0 - rate <= delta; }
};

// Fraction of sample_id-aligned records on which both models predict the
// same class. Both sets must be test sets over identical id sets.
double agreement_rate(const EvaluationSet& base, const EvaluationSet& marked);

// Fraction of trigger records whose prediction equals the planted label.
double trigger_accuracy(const EvaluationSet& set);

ModelProfile estimate_profile(double alpha, const EvaluationSet& test,
                              const EvaluationSet& trigger);

struct LambdaCoefficient {
  double alpha = 0.0;
  double lambda = 0.0;
};

// Per-profile accuracy-loss slope lambda_i = (1 - (1-alpha)p - alpha*q)/alpha.
// Profiles with alpha = 0 are skipped; all-zero input is an error.
std::vector<LambdaCoefficient> lambda_coefficients(
    const std::vector<ModelProfile>& profiles);

// Mean of the lambda_i, accepted only when max |lambda_i - mean| <= tol.
double fit_lambda(const std::vector<ModelProfile>& profiles, double tol);

struct BlendBoundsReport {
  double blended = 0.0;  // (1-alpha)p + alpha*q
  double lower = 0.0;    // min(p, q)
  double upper = 0.0;    // max(p, q)
  bool pass = false;
};

BlendBoundsReport bounds_check(const ModelProfile& profile);

// CSV with header sample_id,label,prediction; labels are nonnegative ints.
std::vector<PredictionRecord> read_prediction_csv(std::istream& in,
                                                  const std::string& source);

}  // namespace wmgame
