#include "oodscreen/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace oodscreen {

namespace {

double mean(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

void EnsembleConfig::validate() const {
  if (!(likelihood_threshold > 0.0 && likelihood_threshold < 1.0)) {
    throw Error(ErrorCode::InvalidInput, "likelihood threshold must lie strictly inside (0, 1)");
  }
}

double average_likelihood(std::span<const double> per_model) {
  if (per_model.empty()) throw Error(ErrorCode::EmptyInput, "no per-model likelihoods");
  for (double v : per_model) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::InvalidInput, "likelihood " + std::to_string(v) + " outside [0, 1]");
    }
  }
  return mean(per_model);
}

bool vote_ungradable(std::size_t ungradable_votes, std::size_t model_count,
                     const EnsembleConfig& cfg) {
  if (model_count == 0) throw Error(ErrorCode::EmptyInput, "no per-model votes");
  if (ungradable_votes > model_count) {
    throw Error(ErrorCode::InvalidInput, "more ungradable votes than models");
  }
  const std::size_t gradable_votes = model_count - ungradable_votes;
  if (ungradable_votes == gradable_votes) return cfg.tie_break_ungradable;
  return ungradable_votes > gradable_votes;
}

bool vote_ungradable(const std::vector<bool>& per_model, const EnsembleConfig& cfg) {
  const auto votes = static_cast<std::size_t>(std::count(per_model.begin(), per_model.end(), true));
  return vote_ungradable(votes, per_model.size(), cfg);
}

double average_ungradability(std::span<const double> per_model) {
  if (per_model.empty()) throw Error(ErrorCode::EmptyInput, "no per-model ungradability values");
  if (!std::all_of(per_model.begin(), per_model.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(ErrorCode::InvalidInput, "non-finite ungradability value");
  }
  return mean(per_model);
}

std::vector<FinalPrediction> ensemble_predict(std::span<const ScoreTable> per_model_scores,
                                              const EnsembleConfig& cfg) {
  cfg.validate();
  if (per_model_scores.empty()) throw Error(ErrorCode::EmptyInput, "no score tables to ensemble");

  // sample_id -> row index, per model.
  std::vector<std::map<std::string, std::size_t>> index(per_model_scores.size());
  for (std::size_t m = 0; m < per_model_scores.size(); ++m) {
    for (std::size_t r = 0; r < per_model_scores[m].size(); ++r) {
      const auto& id = per_model_scores[m][r].sample_id;
      if (!index[m].emplace(id, r).second) {
        throw Error(ErrorCode::DuplicateId,
                    "duplicate sample id '" + id + "' in score table " + std::to_string(m));
      }
    }
  }
  for (std::size_t m = 1; m < index.size(); ++m) {
    const bool same = index[m].size() == index[0].size() &&
                      std::equal(index[m].begin(), index[m].end(), index[0].begin(),
                                 [](const auto& a, const auto& b) { return a.first == b.first; });
    if (!same) {
      throw Error(ErrorCode::IdSetMismatch,
                  "score table " + std::to_string(m) + " does not share the sample ids of table 0");
    }
  }

  const std::size_t models = per_model_scores.size();
  std::vector<FinalPrediction> out;
  out.reserve(index[0].size());
  std::vector<double> likelihoods(models);
  std::vector<double> scalars(models);
  for (const auto& [id, first_row] : index[0]) {
    std::size_t votes = 0;
    for (std::size_t m = 0; m < models; ++m) {
      const SampleScore& s = per_model_scores[m][index[m].at(id)];
      likelihoods[m] = s.likelihood_rg;
      scalars[m] = s.ungradability;
      votes += s.ood ? 1 : 0;
    }
    FinalPrediction p;
    p.sample_id = id;
    p.likelihood_rg = average_likelihood(likelihoods);
    p.referable = p.likelihood_rg >= cfg.likelihood_threshold;
    p.ungradable = vote_ungradable(votes, models, cfg);
    p.ungradability = average_ungradability(scalars);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace oodscreen
