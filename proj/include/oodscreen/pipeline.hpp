#pragma once

#include <span>
#include <string>
#include <vector>

#include "oodscreen/calibration.hpp"
#include "oodscreen/types.hpp"

namespace oodscreen {

/// Which logits feed the referable-glaucoma likelihood. Energy and the OOD
/// decision always use the rectified logits.
enum class LikelihoodSource { Raw, Rectified };

struct ScoreOptions {
  LikelihoodSource likelihood_from = LikelihoodSource::Raw;
};

struct SampleScore {
  std::string sample_id;
  Eigen::VectorXd logits_raw;
  double likelihood_rg = 0.0;
  double energy_raw = 0.0;
  double energy_rectified = 0.0;
  bool ood = false;
  double ungradability = 0.0;
};

using ScoreTable = std::vector<SampleScore>;

/// true (OOD) when -E < tau; the boundary -E == tau is in-distribution.
bool decide_ood(double energy_rectified, double tau);

/// tau + E: positive exactly when decide_ood is true.
double ungradability_scalar(double energy_rectified, double tau);

template <typename Derived>
SampleScore score_sample(const Eigen::MatrixBase<Derived>& h, std::string sample_id,
                         const ModelBundle& bundle, const ScoreOptions& options = {});

/// Scores every row of features against one bundle. Output order equals
/// input order; rows may be evaluated concurrently.
ScoreTable score_batch(const FeatureMatrix<double>& features, std::span<const std::string> ids,
                       const ModelBundle& bundle, const ScoreOptions& options = {});

}  // namespace oodscreen

#include "oodscreen/scoring.hpp"

namespace oodscreen {

template <typename Derived>
SampleScore score_sample(const Eigen::MatrixBase<Derived>& h, std::string sample_id,
                         const ModelBundle& bundle, const ScoreOptions& options) {
  SampleScore score;
  score.sample_id = std::move(sample_id);
  score.logits_raw = apply_head(h, bundle.head);
  const Eigen::VectorXd logits_rectified = apply_head(rectify(h, bundle.c), bundle.head);

  const Eigen::VectorXd probabilities = softmax(
      options.likelihood_from == LikelihoodSource::Raw ? score.logits_raw : logits_rectified);
  score.likelihood_rg = probabilities(bundle.positive_class());

  score.energy_raw = energy(score.logits_raw, bundle.temperature);
  score.energy_rectified = energy(logits_rectified, bundle.temperature);
  score.ood = decide_ood(score.energy_rectified, bundle.tau);
  score.ungradability = ungradability_scalar(score.energy_rectified, bundle.tau);
  return score;
}

}  // namespace oodscreen
