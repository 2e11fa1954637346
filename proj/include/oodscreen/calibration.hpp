#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "oodscreen/types.hpp"

namespace oodscreen {

/// Percentiles are given on the 0..100 scale.
struct CalibrationConfig {
  double activation_percentile = 90.0;
  double energy_percentile = 95.0;
  double temperature = 1.0;

  void validate() const;
};

struct CalibrationMeta {
  std::uint64_t n_validation = 0;
  double activation_percentile = 90.0;
  double energy_percentile = 95.0;
  // Raw quantiles before any sign flip: c itself and the energy quantile (-tau).
  double activation_quantile = 0.0;
  double energy_quantile = 0.0;
};

inline const std::vector<std::string> kDefaultClassNames = {"no_referable_glaucoma",
                                                            "referable_glaucoma"};

/// A calibrated per-model artifact.
struct ModelBundle {
  std::string model_id;
  LinearHead<double> head;
  std::vector<std::string> class_names = kDefaultClassNames;
  double c = 0.0;    // activation threshold
  double tau = 0.0;  // energy threshold, compared against -E
  double temperature = 1.0;
  CalibrationMeta meta;

  /// Column of the "referable glaucoma" class: the index of
  /// "referable_glaucoma" in class_names when present, else 1.
  Index positive_class() const;

  void validate() const;
};

/// Linear interpolation between closest order statistics: with sorted data
/// x_0..x_{n-1} and q = p (n - 1), returns x_floor(q) + frac(q) (x_floor(q)+1 - x_floor(q)).
double quantile(std::span<const double> data, double p);

/// Global activation threshold: quantile of all n*m pooled activations.
/// Throws CalibrationError when the result is not positive.
double calibrate_activation_threshold(const FeatureMatrix<double>& features,
                                      const CalibrationConfig& cfg);

/// Rectified energy of every row, at the given threshold and temperature.
std::vector<double> rectified_energies(const FeatureMatrix<double>& features,
                                       const LinearHead<double>& head, double c,
                                       double temperature);

/// tau from a set of validation energies, so that samples with -E >= tau are
/// kept as in-distribution.
///
/// tau = -quantile(E, pct / 100), except that tau is lowered to -E_(k) when
/// the interpolated quantile would keep fewer than k = ceil(pct n / 100)
/// samples. At least pct percent of the validation set is therefore retained.
double energy_threshold_from_energies(std::span<const double> energies,
                                      double energy_percentile);

double calibrate_energy_threshold(const FeatureMatrix<double>& features,
                                  const LinearHead<double>& head, double c,
                                  const CalibrationConfig& cfg);

ModelBundle calibrate(const FeatureMatrix<double>& features, const LinearHead<double>& head,
                      const CalibrationConfig& cfg, const std::string& model_id);

/// Fraction of the given energies that the threshold keeps in-distribution.
double id_retention(std::span<const double> energies, double tau);

/// Inverse-frequency class weights, scaled to mean 1.
std::vector<double> class_weights(std::span<const std::uint64_t> counts);

}  // namespace oodscreen
