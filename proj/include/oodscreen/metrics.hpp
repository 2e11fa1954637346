#pragma once

#include <cstdint>
#include <vector>

namespace oodscreen {

/// Scores with parallel binary labels; higher scores mean "more positive".
struct LabeledScores {
  std::vector<double> scores;
  std::vector<bool> positive;
};

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct ConfusionTable {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const noexcept { return tp + fp + fn + tn; }
};

/// Empirical ROC curve. One point per distinct score (ties form a single
/// diagonal step), visited from the highest score down; starts at (0, 0)
/// and ends at (1, 1).
std::vector<RocPoint> roc_curve(const LabeledScores& data);

/// Mann-Whitney statistic: P(score_pos > score_neg) + 0.5 P(tie).
double roc_auc(const LabeledScores& data);

/// Trapezoidal area under the ROC curve for fpr in [0, 1 - min_specificity],
/// divided by the window width (a perfect ranking scores 1.0).
double partial_auc(const LabeledScores& data, double min_specificity = 0.9);

/// Best sensitivity over thresholds (positive when score >= threshold) whose
/// specificity is at least target_specificity. No interpolation.
double sensitivity_at_specificity(const LabeledScores& data, double target_specificity = 0.95);

double cohens_kappa(const ConfusionTable& table);

/// Rater agreement table; tp counts samples where both flags are set.
ConfusionTable confusion_table(const std::vector<bool>& predicted, const std::vector<bool>& actual);

}  // namespace oodscreen
