#include "oodscreen/metrics.hpp"

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "test_util.hpp"

using namespace oodscreen;
using testutil::throws_code;

namespace {

LabeledScores random_instance(std::mt19937_64& rng, bool with_ties) {
  std::uniform_int_distribution<int> size(2, 200);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> coarse(0, 9);
  LabeledScores data;
  const int n = size(rng);
  for (int i = 0; i < n; ++i) {
    data.scores.push_back(with_ties ? coarse(rng) / 10.0 : u(rng));
    data.positive.push_back(u(rng) < 0.4);
  }
  data.positive[0] = true;
  data.positive[1] = false;
  return data;
}

LabeledScores separated(bool reversed) {
  LabeledScores data;
  for (int i = 0; i < 10; ++i) {
    data.scores.push_back(i);
    data.positive.push_back(reversed ? i < 5 : i >= 5);
  }
  return data;
}

}  // namespace

TEST(RocAuc, Examples) {
  EXPECT_EQ(roc_auc(separated(false)), 1.0);
  EXPECT_EQ(roc_auc({{0.3, 0.3, 0.3, 0.3}, {true, false, true, false}}), 0.5);
  EXPECT_EQ(roc_auc({{0.9, 0.4, 0.35, 0.8}, {true, false, true, false}}), 0.5);
}

TEST(RocAuc, Errors) {
  EXPECT_TRUE(throws_code(ErrorCode::DegenerateLabels, [] { roc_auc({{0.1, 0.2}, {true, true}}); }));
  EXPECT_TRUE(throws_code(ErrorCode::DimensionError, [] { roc_auc({{0.1, 0.2}, {true}}); }));
  EXPECT_TRUE(throws_code(ErrorCode::InvalidInput, [] { roc_auc({{NAN, 0.2}, {true, false}}); }));
}

TEST(RocAuc, MatchesPairwiseOracleAndProperties) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    auto data = random_instance(rng, trial % 2 == 0);
    const double auc = roc_auc(data);
    EXPECT_NEAR(auc, oracle::pairwise_auc(data.scores, data.positive), 1e-9);

    LabeledScores flipped = data;
    flipped.positive.flip();
    EXPECT_NEAR(roc_auc(flipped), 1.0 - auc, 1e-12);

    LabeledScores transformed = data;
    for (double& s : transformed.scores) s = std::exp(3.0 * s) - 7.0;
    EXPECT_NEAR(roc_auc(transformed), auc, 1e-12);

    const auto curve = roc_curve(data);
    double area = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i) {
      area += (curve[i].fpr - curve[i - 1].fpr) * (curve[i].tpr + curve[i - 1].tpr) / 2.0;
    }
    EXPECT_NEAR(area, auc, 1e-9);
    EXPECT_NEAR(partial_auc(data, 1e-12), auc, 1e-9);
  }
}

TEST(RocCurve, Examples) {
  const auto perfect = roc_curve({{0.9, 0.1}, {true, false}});
  ASSERT_EQ(perfect.size(), 3u);
  EXPECT_EQ(perfect[0].fpr, 0.0);
  EXPECT_EQ(perfect[0].tpr, 0.0);
  EXPECT_EQ(perfect[1].fpr, 0.0);
  EXPECT_EQ(perfect[1].tpr, 1.0);
  EXPECT_EQ(perfect[2].fpr, 1.0);
  EXPECT_EQ(perfect[2].tpr, 1.0);

  const auto tied = roc_curve({{0.5, 0.5}, {true, false}});
  ASSERT_EQ(tied.size(), 2u);
  EXPECT_EQ(tied[1].fpr, 1.0);
  EXPECT_EQ(tied[1].tpr, 1.0);
}

TEST(RocCurve, MatchesThresholdEnumeration) {
  std::mt19937_64 rng(5);
  const LabeledScores mixed = {{0.9, 0.4, 0.35, 0.8}, {true, false, true, false}};
  std::vector<LabeledScores> cases = {mixed};
  for (int i = 0; i < 100; ++i) cases.push_back(random_instance(rng, i % 2 == 1));
  for (const auto& data : cases) {
    const auto curve = roc_curve(data);
    const auto sweep = oracle::threshold_sweep(data.scores, data.positive);
    ASSERT_EQ(curve.size(), sweep.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
      EXPECT_EQ(curve[i].fpr, sweep[i].fpr);
      EXPECT_EQ(curve[i].tpr, sweep[i].tpr);
      if (i > 0) {
        EXPECT_GE(curve[i].fpr, curve[i - 1].fpr);
        EXPECT_GE(curve[i].tpr, curve[i - 1].tpr);
      }
    }
    EXPECT_EQ(curve.back().fpr, 1.0);
    EXPECT_EQ(curve.back().tpr, 1.0);
  }
}

TEST(PartialAuc, Examples) {
  EXPECT_EQ(partial_auc(separated(false)), 1.0);
  EXPECT_EQ(partial_auc(separated(true)), 0.0);
  EXPECT_TRUE(throws_code(ErrorCode::InvalidInput, [] { partial_auc(separated(false), 1.0); }));
}

TEST(PartialAuc, ChanceLevelIsFivePercent) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  LabeledScores data;
  for (int i = 0; i < 20000; ++i) {
    data.scores.push_back(u(rng));
    data.positive.push_back(i % 2 == 0);
  }
  EXPECT_NEAR(partial_auc(data, 0.9), 0.05, 0.01);
}

TEST(PartialAuc, InterpolatesAtWindowEdge) {
  // The top negative comes first: fpr reaches 0.2 while tpr is still 0.
  const LabeledScores data = {{0.9, 0.8, 0.7, 0.6, 0.5, 0.4}, {false, true, false, false, false, false}};
  EXPECT_EQ(partial_auc(data, 0.9), 0.0);
  // Tied top pair: a diagonal from (0,0) to (0.2,1). Area over [0, 0.1] is
  // 0.025, normalised by the window width.
  LabeledScores tied = {{0.9, 0.9, 0.7, 0.6, 0.5, 0.4}, {false, true, false, false, false, false}};
  EXPECT_NEAR(partial_auc(tied, 0.9), 0.25, 1e-12);
}

TEST(SensitivityAtSpecificity, Examples) {
  const LabeledScores data = {{0.9, 0.4, 0.1, 0.2, 0.3, 0.5}, {true, true, false, false, false, false}};
  EXPECT_EQ(sensitivity_at_specificity(data, 0.95), 0.5);
  EXPECT_EQ(sensitivity_at_specificity(separated(false)), 1.0);
  EXPECT_EQ(sensitivity_at_specificity(separated(true)), 0.0);
}

TEST(SensitivityAtSpecificity, MatchesSweepAndIsMonotone) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const auto data = random_instance(rng, trial % 3 == 0);
    double previous = 1.0;
    for (double target : {0.0, 0.5, 0.8, 0.9, 0.95, 0.99, 1.0}) {
      const double got = sensitivity_at_specificity(data, target);
      EXPECT_EQ(got, oracle::sensitivity_at_specificity(data.scores, data.positive, target));
      EXPECT_LE(got, previous);
      previous = got;
    }
  }
}

TEST(CohensKappa, Examples) {
  EXPECT_EQ(cohens_kappa({50, 0, 0, 50}), 1.0);
  EXPECT_EQ(cohens_kappa({25, 25, 25, 25}), 0.0);
  EXPECT_NEAR(cohens_kappa({40, 10, 20, 30}), 0.4, 1e-12);
}

TEST(CohensKappa, Errors) {
  EXPECT_TRUE(throws_code(ErrorCode::DegenerateMarginals, [] { cohens_kappa({0, 0, 0, 10}); }));
  EXPECT_TRUE(throws_code(ErrorCode::DegenerateMarginals, [] { cohens_kappa({7, 0, 0, 0}); }));
  EXPECT_TRUE(throws_code(ErrorCode::EmptyInput, [] { cohens_kappa({0, 0, 0, 0}); }));
}

TEST(CohensKappa, SymmetricAndMatchesClosedForm) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::uint64_t> cell(0, 500);
  for (int trial = 0; trial < 1000; ++trial) {
    ConfusionTable t{cell(rng), cell(rng), cell(rng), cell(rng) + 1};
    if (t.tp + t.fp + t.fn == 0) t.tp = 1;
    const double k = cohens_kappa(t);
    EXPECT_NEAR(k, cohens_kappa({t.tp, t.fn, t.fp, t.tn}), 1e-12);
    EXPECT_NEAR(k, oracle::kappa(t.tp, t.fp, t.fn, t.tn), 1e-12);
    EXPECT_GE(k, -1.0);
    EXPECT_LE(k, 1.0);
  }
}

TEST(ConfusionTable, CountsAgreement) {
  const auto t = confusion_table({true, true, false, false, true}, {true, false, true, false, true});
  EXPECT_EQ(t.tp, 2u);
  EXPECT_EQ(t.fp, 1u);
  EXPECT_EQ(t.fn, 1u);
  EXPECT_EQ(t.tn, 1u);
}
