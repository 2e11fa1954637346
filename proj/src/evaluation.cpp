#include "oodscreen/evaluation.hpp"

#include <array>
#include <charconv>
#include <map>

namespace oodscreen {

namespace {

std::string fixed6(double value) {
  std::array<char, 64> buffer{};
  const auto [ptr, ec] =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value, std::chars_format::fixed, 6);
  if (ec != std::errc{}) throw Error(ErrorCode::InvalidInput, "cannot format report value");
  return {buffer.data(), ptr};
}

}  // namespace

EvaluationReport evaluate(std::span<const FinalPrediction> predictions,
                          std::span<const LabelRecord> labels, const EvaluationConfig& cfg) {
  std::map<std::string_view, const LabelRecord*> by_id;
  for (const auto& label : labels) {
    if (!by_id.emplace(label.sample_id, &label).second) {
      throw Error(ErrorCode::DuplicateId, "duplicate label for sample '" + label.sample_id + "'");
    }
  }
  if (by_id.size() != predictions.size()) {
    throw Error(ErrorCode::IdSetMismatch,
                std::to_string(predictions.size()) + " predictions but " +
                    std::to_string(by_id.size()) + " labels");
  }

  LabeledScores screening;
  LabeledScores ungradability;
  std::vector<bool> predicted_ungradable;
  std::vector<bool> actual_ungradable;
  std::map<std::string_view, bool> seen;
  for (const auto& p : predictions) {
    const auto it = by_id.find(p.sample_id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::IdSetMismatch, "no label for sample '" + p.sample_id + "'");
    }
    if (!seen.emplace(p.sample_id, true).second) {
      throw Error(ErrorCode::DuplicateId, "duplicate prediction for sample '" + p.sample_id + "'");
    }
    const LabelRecord& label = *it->second;
    if (!label.ungradable) {
      screening.scores.push_back(p.likelihood_rg);
      screening.positive.push_back(label.referable);
    }
    ungradability.scores.push_back(p.ungradability);
    ungradability.positive.push_back(label.ungradable);
    predicted_ungradable.push_back(p.ungradable);
    actual_ungradable.push_back(label.ungradable);
  }

  EvaluationReport report;
  report.n_samples = predictions.size();
  report.n_gradable = screening.scores.size();
  report.min_specificity = cfg.min_specificity;
  report.sensitivity_at = cfg.sensitivity_at;
  report.screening_partial_auc = partial_auc(screening, cfg.min_specificity);
  report.screening_sensitivity = sensitivity_at_specificity(screening, cfg.sensitivity_at);
  report.ungradability_kappa = cohens_kappa(confusion_table(predicted_ungradable, actual_ungradable));
  report.ungradability_auc = roc_auc(ungradability);
  return report;
}

std::string format_report(const EvaluationReport& report) {
  std::string out = "{\n";
  out += "  \"n_samples\": " + std::to_string(report.n_samples) + ",\n";
  out += "  \"n_gradable\": " + std::to_string(report.n_gradable) + ",\n";
  out += "  \"min_specificity\": " + fixed6(report.min_specificity) + ",\n";
  out += "  \"sensitivity_at\": " + fixed6(report.sensitivity_at) + ",\n";
  out += "  \"screening_partial_auc\": " + fixed6(report.screening_partial_auc) + ",\n";
  out += "  \"screening_sensitivity\": " + fixed6(report.screening_sensitivity) + ",\n";
  out += "  \"ungradability_kappa\": " + fixed6(report.ungradability_kappa) + ",\n";
  out += "  \"ungradability_auc\": " + fixed6(report.ungradability_auc) + "\n";
  out += "}\n";
  return out;
}

}  // namespace oodscreen
