#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "oodscreen/io.hpp"

namespace oodscreen {

/// Synthetic fixture parameters.
///
/// In-distribution rows scatter around a fixed per-unit activation profile
/// (constant mean, small spread). Out-of-distribution rows replace that
/// profile by a per-sample random one and carry sparse heavy-tailed
/// positive spikes; ood_sharpness scales both effects, and 0 makes OOD rows
/// statistically identical to ID rows.
///
/// model_seed fixes the profile and the head, so fixtures drawn with
/// different seeds share one model. head_jitter adds Gaussian noise
/// (relative to the RMS weight, drawn from seed) to emulate independently
/// trained heads.
struct SyntheticConfig {
  std::size_t n_id = 1000;
  std::size_t n_ood = 1000;
  std::size_t dim = 512;
  std::uint64_t seed = 0;
  double ood_sharpness = 1.0;
  std::uint64_t model_seed = 0;
  double head_jitter = 0.0;

  void validate() const;
};

struct SyntheticData {
  io::FeatureSet features;
  io::HeadDocument head;
  std::vector<LabelRecord> labels;
};

SyntheticData generate_synthetic(const SyntheticConfig& cfg);

}  // namespace oodscreen
