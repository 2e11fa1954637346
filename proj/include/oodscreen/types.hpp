#pragma once

#include <string>

#include <Eigen/Dense>

#include "oodscreen/error.hpp"

namespace oodscreen {

using Index = Eigen::Index;

/// n x m penultimate-layer activations, one row per sample.
template <typename Scalar>
using FeatureMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using FeatureVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Logits = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Final linear layer: logits = weights^T * h + bias.
/// weights is m x K (row i holds unit i's contribution to every class).
template <typename Scalar>
struct LinearHead {
  FeatureMatrix<Scalar> weights;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> bias;

  Index input_dim() const noexcept { return weights.rows(); }
  Index num_classes() const noexcept { return weights.cols(); }

  void validate() const {
    if (weights.rows() < 1) {
      throw Error(ErrorCode::DimensionError, "head input dimension must be >= 1");
    }
    if (weights.cols() < 2) {
      throw Error(ErrorCode::DimensionError,
                  "head class count must be >= 2, got " + std::to_string(weights.cols()));
    }
    if (bias.size() != weights.cols()) {
      throw Error(ErrorCode::DimensionError,
                  "bias length " + std::to_string(bias.size()) + " != class count " +
                      std::to_string(weights.cols()));
    }
    if (!weights.allFinite() || !bias.allFinite()) {
      throw Error(ErrorCode::InvalidInput, "head contains non-finite entries");
    }
  }

  template <typename Other>
  LinearHead<Other> cast() const {
    return {weights.template cast<Other>(), bias.template cast<Other>()};
  }
};

}  // namespace oodscreen
