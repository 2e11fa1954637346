#pragma once

#include <span>
#include <string>
#include <vector>

#include "oodscreen/pipeline.hpp"

namespace oodscreen {

struct EnsembleConfig {
  double likelihood_threshold = 0.5;
  bool tie_break_ungradable = true;  // exact vote ties count as ungradable

  void validate() const;
};

/// The four per-image screening outputs.
struct FinalPrediction {
  std::string sample_id;
  double likelihood_rg = 0.0;
  bool referable = false;
  bool ungradable = false;
  double ungradability = 0.0;
};

/// Mean of per-model likelihoods. Entries must lie in [0, 1]; saturated
/// softmax outputs of exactly 0 or 1 are accepted.
double average_likelihood(std::span<const double> per_model);

bool vote_ungradable(std::size_t ungradable_votes, std::size_t model_count,
                     const EnsembleConfig& cfg);
bool vote_ungradable(const std::vector<bool>& per_model, const EnsembleConfig& cfg);

double average_ungradability(std::span<const double> per_model);

/// Joins per-model score tables on sample_id. Every table must hold exactly
/// the same id set. Output is sorted by sample_id (byte-wise ascending).
std::vector<FinalPrediction> ensemble_predict(std::span<const ScoreTable> per_model_scores,
                                              const EnsembleConfig& cfg);

}  // namespace oodscreen
