#include "oodscreen/pipeline.hpp"

#include <cmath>
#include <unordered_set>

#include "oodscreen/parallel.hpp"

namespace oodscreen {

namespace {

void check_finite_pair(double energy_rectified, double tau) {
  if (!std::isfinite(energy_rectified) || !std::isfinite(tau)) {
    throw Error(ErrorCode::InvalidInput, "energy and tau must be finite");
  }
}

}  // namespace

bool decide_ood(double energy_rectified, double tau) {
  check_finite_pair(energy_rectified, tau);
  return -energy_rectified < tau;
}

double ungradability_scalar(double energy_rectified, double tau) {
  check_finite_pair(energy_rectified, tau);
  return tau + energy_rectified;
}

ScoreTable score_batch(const FeatureMatrix<double>& features, std::span<const std::string> ids,
                       const ModelBundle& bundle, const ScoreOptions& options) {
  if (ids.size() != static_cast<std::size_t>(features.rows())) {
    throw Error(ErrorCode::DimensionError, "got " + std::to_string(ids.size()) + " ids for " +
                                               std::to_string(features.rows()) + " feature rows");
  }
  if (features.rows() > 0 && features.cols() != bundle.head.input_dim()) {
    throw Error(ErrorCode::DimensionError,
                "feature dimension " + std::to_string(features.cols()) +
                    " != head input dimension " + std::to_string(bundle.head.input_dim()));
  }
  std::unordered_set<std::string_view> seen;
  seen.reserve(ids.size());
  for (const auto& id : ids) {
    if (!seen.insert(id).second) throw Error(ErrorCode::DuplicateId, "duplicate sample id '" + id + "'");
  }

  ScoreTable table(ids.size());
  parallel_for(table.size(), [&](std::size_t i) {
    table[i] = score_sample(features.row(static_cast<Index>(i)), ids[i], bundle, options);
  });
  return table;
}

}  // namespace oodscreen
