#pragma once

// Scoring kernels: activation rectification, head application, softmax and
// temperature-scaled energy. All functions are pure and thread-safe.

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "oodscreen/error.hpp"
#include "oodscreen/types.hpp"

namespace oodscreen {

namespace detail {

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& x, const char* what) {
  if (!x.allFinite()) {
    throw Error(ErrorCode::InvalidInput, std::string(what) + " contains non-finite values");
  }
}

template <typename Derived>
void require_nonempty_logits(const Eigen::MatrixBase<Derived>& logits) {
  if (logits.size() == 0) throw Error(ErrorCode::InvalidInput, "logits are empty");
  require_finite(logits, "logits");
}

}  // namespace detail

/// Caps every activation at c from above. Values below c, negative ones
/// included, pass through unchanged. Works on vectors and whole matrices.
template <typename Derived>
typename Derived::PlainObject rectify(const Eigen::MatrixBase<Derived>& h,
                                      typename Derived::Scalar c) {
  detail::require_finite(h, "features");
  if (!std::isfinite(c) || !(c > 0)) {
    throw Error(ErrorCode::InvalidThreshold, "activation threshold must be finite and > 0");
  }
  return h.cwiseMin(c);
}

/// logits[k] = sum_i weights(i, k) * h[i] + bias[k].
///
/// The sum runs over i in ascending order for every k, so the result does
/// not depend on the memory layout or alignment of h.
template <typename Derived>
Logits<typename Derived::Scalar> apply_head(const Eigen::MatrixBase<Derived>& h,
                                            const LinearHead<typename Derived::Scalar>& head) {
  EIGEN_STATIC_ASSERT_VECTOR_ONLY(Derived);
  using Scalar = typename Derived::Scalar;
  if (h.size() != head.input_dim()) {
    throw Error(ErrorCode::DimensionError,
                "feature length " + std::to_string(h.size()) + " != head input dimension " +
                    std::to_string(head.input_dim()));
  }
  const Index classes = head.num_classes();
  Logits<Scalar> out = Logits<Scalar>::Zero(classes);
  for (Index i = 0; i < h.size(); ++i) {
    const Scalar hi = h(i);
    for (Index k = 0; k < classes; ++k) out(k) += head.weights(i, k) * hi;
  }
  out += head.bias;
  return out;
}

/// T * log sum_k exp(logits[k] / T), shifted by the maximum logit.
template <typename Derived>
typename Derived::Scalar logsumexp(const Eigen::MatrixBase<Derived>& logits,
                                   typename Derived::Scalar temperature) {
  using Scalar = typename Derived::Scalar;
  detail::require_nonempty_logits(logits);
  if (!std::isfinite(temperature) || !(temperature > 0)) {
    throw Error(ErrorCode::InvalidTemperature, "temperature must be finite and > 0");
  }
  const Scalar top = logits.maxCoeff();
  Scalar sum = 0;
  for (Index k = 0; k < logits.size(); ++k) sum += std::exp((logits(k) - top) / temperature);
  return top + temperature * std::log(sum);
}

/// E = -T log sum_k exp(logits[k] / T). Lower energy means more in-distribution.
template <typename Derived>
typename Derived::Scalar energy(const Eigen::MatrixBase<Derived>& logits,
                                typename Derived::Scalar temperature) {
  return -logsumexp(logits, temperature);
}

template <typename Derived>
Logits<typename Derived::Scalar> softmax(const Eigen::MatrixBase<Derived>& logits) {
  using Scalar = typename Derived::Scalar;
  detail::require_nonempty_logits(logits);
  const Scalar top = logits.maxCoeff();
  Logits<Scalar> out(logits.size());
  Scalar sum = 0;
  for (Index k = 0; k < logits.size(); ++k) {
    out(k) = std::exp(logits(k) - top);
    sum += out(k);
  }
  out /= sum;
  return out;
}

}  // namespace oodscreen
