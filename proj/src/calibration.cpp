#include "oodscreen/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "oodscreen/parallel.hpp"
#include "oodscreen/pipeline.hpp"
#include "oodscreen/scoring.hpp"

namespace oodscreen {

namespace {

void check_percentile(double pct, const char* name) {
  if (!std::isfinite(pct) || !(pct > 0.0) || !(pct < 100.0)) {
    throw Error(ErrorCode::InvalidInput, std::string(name) + " must lie strictly inside (0, 100)");
  }
}

void check_features(const FeatureMatrix<double>& features) {
  if (features.rows() == 0 || features.cols() == 0) {
    throw Error(ErrorCode::EmptyInput, "validation feature matrix is empty");
  }
  if (!features.allFinite()) {
    throw Error(ErrorCode::InvalidInput, "validation features contain non-finite values");
  }
}

// Smallest k with k / n >= pct / 100, evaluated without rounding in pct * n.
std::size_t required_retained(std::size_t n, double pct) {
  const double target = pct * static_cast<double>(n);
  auto k = static_cast<std::size_t>(std::ceil(target / 100.0));
  while (k > 0 && static_cast<double>(k - 1) * 100.0 >= target) --k;
  while (static_cast<double>(k) * 100.0 < target) ++k;
  return std::min(std::max<std::size_t>(k, 1), n);
}

}  // namespace

void CalibrationConfig::validate() const {
  check_percentile(activation_percentile, "activation percentile");
  check_percentile(energy_percentile, "energy percentile");
  if (!std::isfinite(temperature) || !(temperature > 0.0)) {
    throw Error(ErrorCode::InvalidTemperature, "temperature must be finite and > 0");
  }
}

Index ModelBundle::positive_class() const {
  const auto it = std::find(class_names.begin(), class_names.end(), "referable_glaucoma");
  if (it != class_names.end()) return static_cast<Index>(it - class_names.begin());
  return 1;
}

void ModelBundle::validate() const {
  head.validate();
  if (class_names.size() != static_cast<std::size_t>(head.num_classes())) {
    throw Error(ErrorCode::DimensionError, "class_names length " +
                                               std::to_string(class_names.size()) +
                                               " != class count " +
                                               std::to_string(head.num_classes()));
  }
  if (!std::isfinite(c) || !(c > 0.0)) {
    throw Error(ErrorCode::InvalidThreshold, "activation threshold c must be finite and > 0");
  }
  if (!std::isfinite(tau)) throw Error(ErrorCode::InvalidThreshold, "tau must be finite");
  if (!std::isfinite(temperature) || !(temperature > 0.0)) {
    throw Error(ErrorCode::InvalidTemperature, "temperature must be finite and > 0");
  }
  if (meta.n_validation < 1) {
    throw Error(ErrorCode::InvalidInput, "calibration_meta.n_validation must be >= 1");
  }
}

double quantile(std::span<const double> data, double p) {
  if (data.empty()) throw Error(ErrorCode::EmptyInput, "quantile of empty data");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidInput, "quantile level outside [0, 1]");
  std::vector<double> sorted(data.begin(), data.end());
  if (!std::all_of(sorted.begin(), sorted.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(ErrorCode::InvalidInput, "quantile data contains non-finite values");
  }
  std::sort(sorted.begin(), sorted.end());

  const double position = p * static_cast<double>(sorted.size() - 1);
  const auto lower = static_cast<std::size_t>(std::floor(position));
  if (lower + 1 >= sorted.size()) return sorted.back();
  const double frac = position - static_cast<double>(lower);
  return sorted[lower] + frac * (sorted[lower + 1] - sorted[lower]);
}

double calibrate_activation_threshold(const FeatureMatrix<double>& features,
                                      const CalibrationConfig& cfg) {
  cfg.validate();
  check_features(features);
  const std::span<const double> pooled(features.data(),
                                       static_cast<std::size_t>(features.size()));
  const double c = quantile(pooled, cfg.activation_percentile / 100.0);
  if (!(c > 0.0)) {
    throw Error(ErrorCode::CalibrationError,
                "activation threshold " + std::to_string(c) +
                    " is not positive; validation features are degenerate");
  }
  return c;
}

std::vector<double> rectified_energies(const FeatureMatrix<double>& features,
                                       const LinearHead<double>& head, double c,
                                       double temperature) {
  head.validate();
  if (features.cols() != head.input_dim()) {
    throw Error(ErrorCode::DimensionError,
                "feature dimension " + std::to_string(features.cols()) +
                    " != head input dimension " + std::to_string(head.input_dim()));
  }
  std::vector<double> energies(static_cast<std::size_t>(features.rows()));
  parallel_for(energies.size(), [&](std::size_t i) {
    const auto row = features.row(static_cast<Index>(i));
    energies[i] = energy(apply_head(rectify(row, c), head), temperature);
  });
  return energies;
}

double energy_threshold_from_energies(std::span<const double> energies,
                                      double energy_percentile) {
  check_percentile(energy_percentile, "energy percentile");
  if (energies.empty()) throw Error(ErrorCode::EmptyInput, "no validation energies");
  const double interpolated = quantile(energies, energy_percentile / 100.0);

  std::vector<double> sorted(energies.begin(), energies.end());
  std::sort(sorted.begin(), sorted.end());
  const double kth = sorted[required_retained(sorted.size(), energy_percentile) - 1];
  return -std::max(interpolated, kth);
}

double calibrate_energy_threshold(const FeatureMatrix<double>& features,
                                  const LinearHead<double>& head, double c,
                                  const CalibrationConfig& cfg) {
  cfg.validate();
  if (features.cols() != head.input_dim()) {
    throw Error(ErrorCode::DimensionError,
                "feature dimension " + std::to_string(features.cols()) +
                    " != head input dimension " + std::to_string(head.input_dim()));
  }
  check_features(features);
  const auto energies = rectified_energies(features, head, c, cfg.temperature);
  return energy_threshold_from_energies(energies, cfg.energy_percentile);
}

ModelBundle calibrate(const FeatureMatrix<double>& features, const LinearHead<double>& head,
                      const CalibrationConfig& cfg, const std::string& model_id) {
  cfg.validate();
  head.validate();
  if (features.cols() != head.input_dim()) {
    throw Error(ErrorCode::DimensionError,
                "feature dimension " + std::to_string(features.cols()) +
                    " != head input dimension " + std::to_string(head.input_dim()));
  }
  const double c = calibrate_activation_threshold(features, cfg);
  const double tau = calibrate_energy_threshold(features, head, c, cfg);

  ModelBundle bundle;
  bundle.model_id = model_id;
  bundle.head = head;
  bundle.class_names = head.num_classes() == 2
                           ? kDefaultClassNames
                           : std::vector<std::string>(static_cast<std::size_t>(head.num_classes()));
  if (head.num_classes() != 2) {
    for (Index k = 0; k < head.num_classes(); ++k) {
      bundle.class_names[static_cast<std::size_t>(k)] = "class_" + std::to_string(k);
    }
  }
  bundle.c = c;
  bundle.tau = tau;
  bundle.temperature = cfg.temperature;
  bundle.meta.n_validation = static_cast<std::uint64_t>(features.rows());
  bundle.meta.activation_percentile = cfg.activation_percentile;
  bundle.meta.energy_percentile = cfg.energy_percentile;
  bundle.meta.activation_quantile = c;
  bundle.meta.energy_quantile = -tau;
  return bundle;
}

double id_retention(std::span<const double> energies, double tau) {
  if (energies.empty()) throw Error(ErrorCode::EmptyInput, "no energies");
  const auto kept = std::count_if(energies.begin(), energies.end(),
                                  [tau](double e) { return !decide_ood(e, tau); });
  return static_cast<double>(kept) / static_cast<double>(energies.size());
}

std::vector<double> class_weights(std::span<const std::uint64_t> counts) {
  if (counts.empty()) throw Error(ErrorCode::EmptyInput, "no class counts");
  std::vector<double> weights(counts.size());
  double raw_sum = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) {
      throw Error(ErrorCode::InvalidInput, "class " + std::to_string(k) + " has zero count");
    }
    weights[k] = 1.0 / static_cast<double>(counts[k]);
    raw_sum += weights[k];
  }
  const auto classes = static_cast<double>(counts.size());
  for (double& w : weights) w = classes * w / raw_sum;
  return weights;
}

}  // namespace oodscreen
