#include "oodscreen/synthetic.hpp"

#include <array>
#include <cmath>
#include <cstdio>

#include <boost/random/bernoulli_distribution.hpp>
#include <boost/random/exponential_distribution.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

namespace oodscreen {

namespace {

using Engine = boost::random::mt19937_64;

// Fixture constants. Activation profile levels are U(0, profile_max).
constexpr double kProfileMax = 2.0;
constexpr double kActivationNoise = 0.3;
constexpr double kClassShift = 0.02;
constexpr double kReferableFraction = 0.3;
constexpr double kSpikeRate = 0.05;
constexpr double kSpikeScale = 3.0;
constexpr double kProfileMix = 0.35;
// Head: W(j, k) = (common * profile_j + sign_k * discriminative * direction_j + noise) / m
constexpr double kCommonGain = 6.0;
constexpr double kDiscriminativeGain = 10.0;
constexpr double kHeadNoise = 1.0;
constexpr std::array<double, 2> kClassSign = {-1.0, 1.0};

constexpr std::uint64_t kJitterStream = 0x9E3779B97F4A7C15ull;

struct Model {
  Eigen::VectorXd profile;
  Eigen::VectorXd direction;
  LinearHead<double> head;
};

Model make_model(std::size_t dim, std::uint64_t model_seed) {
  Engine engine(model_seed);
  boost::random::uniform_real_distribution<double> level(0.0, kProfileMax);
  boost::random::normal_distribution<double> gaussian(0.0, 1.0);

  const auto m = static_cast<Index>(dim);
  Model model;
  model.profile.resize(m);
  model.direction.resize(m);
  for (Index j = 0; j < m; ++j) model.profile(j) = level(engine);
  for (Index j = 0; j < m; ++j) model.direction(j) = gaussian(engine);

  model.head.weights.resize(m, 2);
  for (Index j = 0; j < m; ++j) {
    for (Index k = 0; k < 2; ++k) {
      model.head.weights(j, k) = (kCommonGain * model.profile(j) +
                                  kClassSign[static_cast<std::size_t>(k)] * kDiscriminativeGain *
                                      model.direction(j) +
                                  kHeadNoise * gaussian(engine)) /
                                 static_cast<double>(dim);
    }
  }
  model.head.bias = Eigen::VectorXd::Zero(2);
  return model;
}

void jitter_head(LinearHead<double>& head, double relative_scale, std::uint64_t seed) {
  if (relative_scale == 0.0) return;
  Engine engine(seed ^ kJitterStream);
  const double rms = std::sqrt(head.weights.squaredNorm() / static_cast<double>(head.weights.size()));
  boost::random::normal_distribution<double> gaussian(0.0, relative_scale * rms);
  for (Index j = 0; j < head.weights.rows(); ++j) {
    for (Index k = 0; k < head.weights.cols(); ++k) head.weights(j, k) += gaussian(engine);
  }
}

std::string row_id(const char* prefix, std::size_t index) {
  std::array<char, 32> buffer{};
  std::snprintf(buffer.data(), buffer.size(), "%s_%06zu", prefix, index);
  return buffer.data();
}

}  // namespace

void SyntheticConfig::validate() const {
  if (n_id == 0) throw Error(ErrorCode::InvalidInput, "n_id must be positive");
  if (dim == 0) throw Error(ErrorCode::InvalidInput, "dim must be positive");
  if (!std::isfinite(ood_sharpness) || ood_sharpness < 0.0) {
    throw Error(ErrorCode::InvalidInput, "ood sharpness must be finite and >= 0");
  }
  if (!std::isfinite(head_jitter) || head_jitter < 0.0) {
    throw Error(ErrorCode::InvalidInput, "head jitter must be finite and >= 0");
  }
}

SyntheticData generate_synthetic(const SyntheticConfig& cfg) {
  cfg.validate();
  const Model model = make_model(cfg.dim, cfg.model_seed);
  const auto m = static_cast<Index>(cfg.dim);

  Engine engine(cfg.seed);
  boost::random::normal_distribution<double> noise(0.0, kActivationNoise);
  boost::random::uniform_real_distribution<double> level(0.0, kProfileMax);
  boost::random::bernoulli_distribution<double> referable(kReferableFraction);
  boost::random::bernoulli_distribution<double> spike(kSpikeRate);
  boost::random::exponential_distribution<double> spike_size(1.0);

  const double mix = std::min(1.0, kProfileMix * cfg.ood_sharpness);
  const double spike_amplitude = kSpikeScale * cfg.ood_sharpness;

  SyntheticData data;
  const std::size_t rows = cfg.n_id + cfg.n_ood;
  data.features.values.resize(static_cast<Index>(rows), m);
  data.features.ids.reserve(rows);
  data.labels.reserve(rows);

  Eigen::VectorXd h(m);
  for (std::size_t r = 0; r < rows; ++r) {
    const bool is_ood = r >= cfg.n_id;
    const bool positive = referable(engine);
    const double shift = kClassShift * kClassSign[positive ? 1 : 0];
    for (Index j = 0; j < m; ++j) {
      double base = model.profile(j) + shift * model.direction(j);
      if (is_ood) base = (1.0 - mix) * base + mix * level(engine);
      h(j) = std::max(0.0, base + noise(engine));
      if (is_ood && spike(engine)) h(j) += spike_amplitude * spike_size(engine);
    }
    data.features.values.row(static_cast<Index>(r)) = h.transpose().cast<float>();
    if (is_ood) {
      data.features.ids.push_back(row_id("ood", r - cfg.n_id));
      data.labels.push_back({data.features.ids.back(), false, true});
    } else {
      data.features.ids.push_back(row_id("id", r));
      data.labels.push_back({data.features.ids.back(), positive, false});
    }
  }

  data.head.model_id = "synthetic-m" + std::to_string(cfg.model_seed);
  data.head.head = model.head;
  if (cfg.head_jitter > 0.0) {
    jitter_head(data.head.head, cfg.head_jitter, cfg.seed);
    data.head.model_id += "-s" + std::to_string(cfg.seed);
  }
  data.head.class_names = kDefaultClassNames;
  return data;
}

}  // namespace oodscreen
