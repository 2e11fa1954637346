#include "oodscreen/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "oodscreen/error.hpp"

namespace oodscreen {

namespace {

struct ClassCounts {
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

ClassCounts validate(const LabeledScores& data) {
  if (data.scores.size() != data.positive.size()) {
    throw Error(ErrorCode::DimensionError, "got " + std::to_string(data.scores.size()) +
                                               " scores and " +
                                               std::to_string(data.positive.size()) + " labels");
  }
  if (!std::all_of(data.scores.begin(), data.scores.end(), [](double s) { return std::isfinite(s); })) {
    throw Error(ErrorCode::InvalidInput, "scores contain non-finite values");
  }
  ClassCounts counts;
  counts.positives = static_cast<std::size_t>(std::count(data.positive.begin(), data.positive.end(), true));
  counts.negatives = data.positive.size() - counts.positives;
  if (counts.positives == 0 || counts.negatives == 0) {
    throw Error(ErrorCode::DegenerateLabels, "ROC analysis needs at least one positive and one negative");
  }
  return counts;
}

// Indices sorted by descending score.
std::vector<std::size_t> descending_order(const std::vector<double>& scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

// Cumulative (fp, tp) counts after each distinct-score group, highest first.
struct StepCounts {
  std::size_t fp = 0;
  std::size_t tp = 0;
};

std::vector<StepCounts> threshold_steps(const LabeledScores& data) {
  const auto order = descending_order(data.scores);
  std::vector<StepCounts> steps{{0, 0}};
  StepCounts running;
  for (std::size_t i = 0; i < order.size();) {
    const double group_score = data.scores[order[i]];
    while (i < order.size() && data.scores[order[i]] == group_score) {
      if (data.positive[order[i]]) {
        ++running.tp;
      } else {
        ++running.fp;
      }
      ++i;
    }
    steps.push_back(running);
  }
  return steps;
}

}  // namespace

std::vector<RocPoint> roc_curve(const LabeledScores& data) {
  const auto counts = validate(data);
  const auto steps = threshold_steps(data);
  std::vector<RocPoint> curve;
  curve.reserve(steps.size());
  for (const auto& s : steps) {
    curve.push_back({static_cast<double>(s.fp) / static_cast<double>(counts.negatives),
                     static_cast<double>(s.tp) / static_cast<double>(counts.positives)});
  }
  return curve;
}

double roc_auc(const LabeledScores& data) {
  const auto counts = validate(data);
  // Rank-sum form of the Mann-Whitney statistic with mid-ranks for ties.
  std::vector<std::size_t> order(data.scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return data.scores[a] < data.scores[b]; });
  double positive_rank_sum = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    std::size_t group_positives = 0;
    while (j < order.size() && data.scores[order[j]] == data.scores[order[i]]) {
      group_positives += data.positive[order[j]] ? 1 : 0;
      ++j;
    }
    // ranks i+1 .. j share the mid-rank
    const double mid_rank = 0.5 * static_cast<double>(i + 1 + j);
    positive_rank_sum += mid_rank * static_cast<double>(group_positives);
    i = j;
  }
  const auto p = static_cast<double>(counts.positives);
  const auto n = static_cast<double>(counts.negatives);
  const double u = positive_rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * n);
}

double partial_auc(const LabeledScores& data, double min_specificity) {
  if (!(min_specificity > 0.0 && min_specificity < 1.0)) {
    throw Error(ErrorCode::InvalidInput, "min_specificity must lie strictly inside (0, 1)");
  }
  const auto curve = roc_curve(data);
  const double max_fpr = 1.0 - min_specificity;
  double area = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    const RocPoint& a = curve[i - 1];
    const RocPoint& b = curve[i];
    if (a.fpr >= max_fpr) break;
    if (b.fpr <= max_fpr) {
      area += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
    } else {
      const double t = (max_fpr - a.fpr) / (b.fpr - a.fpr);
      const double edge_tpr = a.tpr + t * (b.tpr - a.tpr);
      area += (max_fpr - a.fpr) * (a.tpr + edge_tpr) / 2.0;
      break;
    }
  }
  return area / max_fpr;
}

double sensitivity_at_specificity(const LabeledScores& data, double target_specificity) {
  if (!(target_specificity >= 0.0 && target_specificity <= 1.0)) {
    throw Error(ErrorCode::InvalidInput, "target specificity must lie in [0, 1]");
  }
  const auto counts = validate(data);
  double best = 0.0;
  for (const auto& s : threshold_steps(data)) {
    const double specificity = static_cast<double>(counts.negatives - s.fp) /
                               static_cast<double>(counts.negatives);
    if (specificity >= target_specificity) {
      best = std::max(best, static_cast<double>(s.tp) / static_cast<double>(counts.positives));
    }
  }
  return best;
}

double cohens_kappa(const ConfusionTable& table) {
  const auto total = static_cast<double>(table.total());
  if (table.total() == 0) throw Error(ErrorCode::EmptyInput, "empty confusion table");
  const auto tp = static_cast<double>(table.tp);
  const auto fp = static_cast<double>(table.fp);
  const auto fn = static_cast<double>(table.fn);
  const auto tn = static_cast<double>(table.tn);
  const double observed = (tp + tn) / total;
  const double expected = ((tp + fp) * (tp + fn) + (fn + tn) * (fp + tn)) / (total * total);
  if (expected == 1.0) {
    throw Error(ErrorCode::DegenerateMarginals, "both raters are constant; kappa is undefined");
  }
  return (observed - expected) / (1.0 - expected);
}

ConfusionTable confusion_table(const std::vector<bool>& predicted, const std::vector<bool>& actual) {
  if (predicted.size() != actual.size()) {
    throw Error(ErrorCode::DimensionError, "predicted and actual flag counts differ");
  }
  ConfusionTable table;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] && actual[i]) {
      ++table.tp;
    } else if (predicted[i]) {
      ++table.fp;
    } else if (actual[i]) {
      ++table.fn;
    } else {
      ++table.tn;
    }
  }
  return table;
}

}  // namespace oodscreen
