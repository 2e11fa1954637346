#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "oodscreen/ensemble.hpp"
#include "oodscreen/metrics.hpp"

namespace oodscreen {

/// Reference labels for one image.
struct LabelRecord {
  std::string sample_id;
  bool referable = false;
  bool ungradable = false;
};

struct EvaluationConfig {
  double min_specificity = 0.9;
  double sensitivity_at = 0.95;
};

struct EvaluationReport {
  std::size_t n_samples = 0;
  std::size_t n_gradable = 0;
  double min_specificity = 0.9;
  double sensitivity_at = 0.95;
  double screening_partial_auc = 0.0;
  double screening_sensitivity = 0.0;
  double ungradability_kappa = 0.0;
  double ungradability_auc = 0.0;
};

/// Joins predictions to labels on sample_id (id sets must match exactly).
/// Screening metrics use the likelihood on samples labelled gradable;
/// ungradability metrics use every sample.
EvaluationReport evaluate(std::span<const FinalPrediction> predictions,
                          std::span<const LabelRecord> labels, const EvaluationConfig& cfg = {});

/// JSON object with every metric printed at 6 decimal places.
std::string format_report(const EvaluationReport& report);

}  // namespace oodscreen
