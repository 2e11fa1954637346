#include "oodscreen/io.hpp"

#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace oodscreen;
using namespace oodscreen::io;
using testutil::throws_code;

namespace {

std::string bytes(std::initializer_list<unsigned> values) {
  std::string out;
  for (unsigned v : values) out.push_back(static_cast<char>(v));
  return out;
}

// Two rows "a", "b" by three columns: [1, 2, 3], [-0.5, 0, 4].
std::string golden_two_by_three() {
  return bytes({0x4F, 0x4F, 0x44, 0x46,                          // "OODF"
                0x01, 0x00, 0x01, 0x00,                          // version 1, dtype 1
                0x02, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,  // n_rows 2
                0x03, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,  // n_cols 3
                0x01, 0x00, 0x61,                                // "a"
                0x01, 0x00, 0x62,                                // "b"
                0x00, 0x00, 0x80, 0x3F, 0x00, 0x00, 0x00, 0x40, 0x00, 0x00, 0x40, 0x40,
                0x00, 0x00, 0x00, 0xBF, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x80, 0x40});
}

FeatureSet two_by_three() {
  FeatureSet set;
  set.ids = {"a", "b"};
  set.values.resize(2, 3);
  set.values << 1.0f, 2.0f, 3.0f, -0.5f, 0.0f, 4.0f;
  return set;
}

ModelBundle small_bundle() {
  ModelBundle b;
  b.model_id = "m0";
  b.head.weights.resize(3, 2);
  b.head.weights << 0.1, -0.2, 0.30000000000000004, 1e-300, -7.5, 2.0;
  b.head.bias.resize(2);
  b.head.bias << 0.1 + 0.2, -1.0 / 3.0;
  b.c = 9.1;
  b.tau = 4.123456789012345;
  b.temperature = 1.0;
  b.meta.n_validation = 20;
  b.meta.activation_quantile = 9.1;
  b.meta.energy_quantile = -4.123456789012345;
  return b;
}

void expect_same(const ModelBundle& a, const ModelBundle& b) {
  EXPECT_EQ(a.model_id, b.model_id);
  EXPECT_EQ(a.head.weights, b.head.weights);
  EXPECT_EQ(a.head.bias, b.head.bias);
  EXPECT_EQ(a.class_names, b.class_names);
  EXPECT_EQ(a.c, b.c);
  EXPECT_EQ(a.tau, b.tau);
  EXPECT_EQ(a.temperature, b.temperature);
  EXPECT_EQ(a.meta.n_validation, b.meta.n_validation);
  EXPECT_EQ(a.meta.activation_percentile, b.meta.activation_percentile);
  EXPECT_EQ(a.meta.energy_percentile, b.meta.energy_percentile);
  EXPECT_EQ(a.meta.activation_quantile, b.meta.activation_quantile);
  EXPECT_EQ(a.meta.energy_quantile, b.meta.energy_quantile);
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  if (pos != std::string::npos) text.replace(pos, from.size(), to);
  return text;
}

}  // namespace

TEST(FeatureFile, EncodesGoldenBytes) {
  EXPECT_EQ(encode_features(two_by_three()), golden_two_by_three());
}

TEST(FeatureFile, DecodesGoldenBytes) {
  const auto set = decode_features(golden_two_by_three());
  EXPECT_EQ(set.ids, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(set.values, two_by_three().values);
}

TEST(FeatureFile, HeaderOnlyFile) {
  FeatureSet empty;
  empty.values.resize(0, 5);
  const auto encoded = encode_features(empty);
  EXPECT_EQ(encoded.size(), kFeatureHeaderSize);
  const auto decoded = decode_features(encoded);
  EXPECT_EQ(decoded.values.rows(), 0);
  EXPECT_EQ(decoded.values.cols(), 5);
  EXPECT_TRUE(decoded.ids.empty());
}

TEST(FeatureFile, RejectsCorruptHeaders) {
  auto bad_magic = golden_two_by_three();
  bad_magic[0] = 'X';
  EXPECT_TRUE(throws_code(ErrorCode::FormatError, [&] { decode_features(bad_magic); }));
  auto bad_version = golden_two_by_three();
  bad_version[4] = 2;
  EXPECT_TRUE(throws_code(ErrorCode::FormatError, [&] { decode_features(bad_version); }));
  auto bad_dtype = golden_two_by_three();
  bad_dtype[6] = 2;
  EXPECT_TRUE(throws_code(ErrorCode::FormatError, [&] { decode_features(bad_dtype); }));
  EXPECT_TRUE(throws_code(ErrorCode::TruncationError, [] { decode_features("OOD"); }));
}

TEST(FeatureFile, RejectsLengthMismatch) {
  const auto golden = golden_two_by_three();
  for (std::size_t cut = 0; cut < golden.size(); ++cut) {
    const auto prefix = golden.substr(0, cut);
    if (cut < 4) {
      EXPECT_TRUE(throws_code(ErrorCode::TruncationError, [&] { decode_features(prefix); })) << cut;
    } else {
      EXPECT_ANY_THROW(decode_features(prefix)) << cut;
    }
  }
  EXPECT_TRUE(throws_code(ErrorCode::TruncationError,
                          [&] { decode_features(golden.substr(0, golden.size() - 1)); }));
  EXPECT_TRUE(throws_code(ErrorCode::FormatError, [&] { decode_features(golden + "x"); }));
}

TEST(FeatureFile, RejectsHugeRowCountWithoutAllocating) {
  auto huge = golden_two_by_three();
  for (int i = 8; i < 16; ++i) huge[static_cast<std::size_t>(i)] = static_cast<char>(0xFF);
  EXPECT_TRUE(throws_code(ErrorCode::TruncationError, [&] { decode_features(huge); }));
}

TEST(FeatureFile, RejectsDuplicateIdsAndNonFinite) {
  auto dup = golden_two_by_three();
  dup[29] = 0x61;
  EXPECT_TRUE(throws_code(ErrorCode::DuplicateId, [&] { decode_features(dup); }));
  auto nan = golden_two_by_three();
  nan[33] = static_cast<char>(0x7F);
  nan[32] = static_cast<char>(0xC0);
  EXPECT_TRUE(throws_code(ErrorCode::FormatError, [&] { decode_features(nan); }));

  auto set = two_by_three();
  set.ids[1] = "a";
  EXPECT_TRUE(throws_code(ErrorCode::DuplicateId, [&] { encode_features(set); }));
  set = two_by_three();
  set.values(0, 0) = std::numeric_limits<float>::infinity();
  EXPECT_TRUE(throws_code(ErrorCode::InvalidInput, [&] { encode_features(set); }));
}

TEST(FeatureFile, FuzzedRoundTrip) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> size(0, 12);
  std::uniform_int_distribution<int> byte(0, 255);
  std::normal_distribution<float> g(0.0f, 100.0f);
  for (int trial = 0; trial < 200; ++trial) {
    FeatureSet set;
    const int rows = size(rng);
    const int cols = size(rng);
    set.values.resize(rows, cols);
    for (Index i = 0; i < set.values.size(); ++i) set.values.data()[i] = g(rng);
    for (int r = 0; r < rows; ++r) {
      std::string id = std::to_string(r) + "_";
      for (int k = size(rng); k > 0; --k) id.push_back(static_cast<char>(byte(rng)));
      set.ids.push_back(id);
    }
    const auto decoded = decode_features(encode_features(set));
    EXPECT_EQ(decoded.ids, set.ids);
    EXPECT_EQ(decoded.values, set.values);
  }
}

TEST(FeatureFile, WriteAndReadThroughDisk) {
  testutil::TempDir dir;
  write_features(dir.file("x.oodf"), two_by_three());
  EXPECT_EQ(read_file(dir.file("x.oodf")), golden_two_by_three());
  EXPECT_EQ(read_features(dir.file("x.oodf")).values, two_by_three().values);
  EXPECT_TRUE(throws_code(ErrorCode::IoError, [&] { read_features(dir.file("missing.oodf")); }));
}

TEST(Bundle, RoundTripsExactly) {
  const auto bundle = small_bundle();
  const auto text = bundle_to_json(bundle);
  expect_same(bundle_from_json(text), bundle);
  EXPECT_EQ(bundle_to_json(bundle_from_json(text)), text);
}

TEST(Bundle, SchemaErrors) {
  const auto text = bundle_to_json(small_bundle());
  EXPECT_TRUE(throws_code(ErrorCode::SchemaError,
                          [&] { bundle_from_json(replace(text, "\"tau\"", "\"tau_typo\"")); }));
  EXPECT_TRUE(throws_code(ErrorCode::SchemaError,
                          [&] { bundle_from_json(replace(text, "\"c\": 9.1", "\"c\": \"9.1\"")); }));
  EXPECT_TRUE(throws_code(ErrorCode::SchemaError,
                          [&] { bundle_from_json(replace(text, "\"c\": 9.1", "\"c\": -1.0")); }));
  EXPECT_TRUE(throws_code(ErrorCode::SchemaError, [&] {
    bundle_from_json(replace(text, "\"n_validation\"", "\"n_val\""));
  }));
  EXPECT_TRUE(throws_code(ErrorCode::SchemaError, [&] { bundle_from_json("[1, 2]"); }));
  EXPECT_TRUE(throws_code(ErrorCode::FormatError, [&] { bundle_from_json("{\"model_id\": "); }));
  EXPECT_TRUE(throws_code(ErrorCode::DimensionError,
                          [&] { bundle_from_json(replace(text, "\"m\": 3", "\"m\": 4")); }));
}

TEST(Bundle, MissingKeyIsNamed) {
  auto text = bundle_to_json(small_bundle());
  text = replace(text, "\"tau\"", "\"extra\"");
  try {
    bundle_from_json(text);
    FAIL() << "expected SchemaError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SchemaError);
    EXPECT_NE(std::string(e.what()).find("tau"), std::string::npos);
  }
}

TEST(Bundle, FuzzedRoundTrip) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> dim(1, 9);
  std::normal_distribution<double> g(0.0, 1e3);
  std::uniform_real_distribution<double> u(1e-6, 50.0);
  for (int trial = 0; trial < 200; ++trial) {
    ModelBundle b;
    b.model_id = "model-" + std::to_string(trial);
    const int m = dim(rng);
    const int k = 2 + trial % 3;
    b.head.weights.resize(m, k);
    for (Index i = 0; i < b.head.weights.size(); ++i) b.head.weights.data()[i] = g(rng);
    b.head.bias.resize(k);
    for (Index i = 0; i < k; ++i) b.head.bias(i) = g(rng);
    b.class_names.clear();
    for (int i = 0; i < k; ++i) b.class_names.push_back("class_" + std::to_string(i));
    b.c = u(rng);
    b.tau = g(rng);
    b.temperature = u(rng);
    b.meta.n_validation = static_cast<std::uint64_t>(trial) + 1;
    b.meta.activation_quantile = b.c;
    b.meta.energy_quantile = -b.tau;
    expect_same(bundle_from_json(bundle_to_json(b)), b);
  }
}

TEST(Head, AcceptsHeadOnlyOrBundle) {
  HeadDocument doc;
  doc.model_id = "h";
  doc.head = small_bundle().head;
  const auto parsed = head_from_json(head_to_json(doc));
  EXPECT_EQ(parsed.head.weights, doc.head.weights);
  EXPECT_EQ(head_from_json(bundle_to_json(small_bundle())).model_id, "m0");
  EXPECT_TRUE(throws_code(ErrorCode::SchemaError, [&] {
    head_from_json(replace(head_to_json(doc), "\"bias\"", "\"bias2\""));
  }));
  EXPECT_TRUE(throws_code(ErrorCode::DimensionError, [&] {
    head_from_json(replace(head_to_json(doc), "\"K\": 2", "\"K\": 3"));
  }));
}

TEST(FormatDouble, SeventeenSignificantDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(-0.25), "-0.25");
}

TEST(ScoreTable, RoundTripAndGoldenText) {
  SampleScore s;
  s.sample_id = "img1";
  s.logits_raw = Eigen::Vector2d(0.5, -1.0);
  s.likelihood_rg = 0.25;
  s.energy_raw = -1.5;
  s.energy_rectified = -1.25;
  s.ood = true;
  s.ungradability = 0.75;
  const ScoreTable table = {s};
  const auto text = score_table_to_csv(table);
  EXPECT_EQ(text,
            "sample_id,logit_0,logit_1,likelihood_rg,energy_raw,energy_rectified,ood,ungradability\n"
            "img1,0.5,-1,0.25,-1.5,-1.25,1,0.75\n");
  const auto back = score_table_from_csv(text);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].logits_raw, s.logits_raw);
  EXPECT_EQ(back[0].ood, true);
  EXPECT_EQ(back[0].ungradability, 0.75);
  EXPECT_TRUE(score_table_from_csv(score_table_to_csv({})).empty());
}

TEST(ScoreTable, ThreeClassHeader) {
  const std::string text =
      "sample_id,logit_0,logit_1,logit_2,likelihood_rg,energy_raw,energy_rectified,ood,ungradability\n"
      "x,1,2,3,0.5,-3.5,-3.25,0,-0.125\n";
  const auto table = score_table_from_csv(text);
  ASSERT_EQ(table.size(), 1u);
  EXPECT_EQ(table[0].logits_raw.size(), 3);
  EXPECT_EQ(score_table_to_csv(table), text);
}

TEST(ScoreTable, ParseErrors) {
  const std::string header =
      "sample_id,logit_0,logit_1,likelihood_rg,energy_raw,energy_rectified,ood,ungradability\n";
  EXPECT_TRUE(throws_code(ErrorCode::FormatError, [] { score_table_from_csv("id,x\n"); }));
  EXPECT_TRUE(throws_code(ErrorCode::FormatError, [] { score_table_from_csv(""); }));
  EXPECT_TRUE(throws_code(ErrorCode::ParseError,
                          [&] { score_table_from_csv(header + "a,1,2,abc,1,1,0,1\n"); }));
  EXPECT_TRUE(throws_code(ErrorCode::ParseError,
                          [&] { score_table_from_csv(header + "a,1,2,0.5,1,1,2,1\n"); }));
  EXPECT_TRUE(throws_code(ErrorCode::ParseError,
                          [&] { score_table_from_csv(header + "a,1,2,0.5,1,1,0\n"); }));
  EXPECT_TRUE(throws_code(ErrorCode::ParseError,
                          [&] { score_table_from_csv(header + "a,1,2,nan,1,1,0,1\n"); }));
  EXPECT_TRUE(throws_code(ErrorCode::DuplicateId, [&] {
    score_table_from_csv(header + "a,1,2,0.5,1,1,0,1\na,1,2,0.5,1,1,0,1\n");
  }));
}

TEST(Predictions, RoundTrip) {
  const std::vector<FinalPrediction> predictions = {{"a", 0.7, true, false, -0.06},
                                                    {"b", 0.1 + 0.2, false, true, 1e-17}};
  const auto text = predictions_to_csv(predictions);
  EXPECT_EQ(text.substr(0, text.find('\n')), "sample_id,likelihood_rg,referable,ungradable,ungradability");
  const auto back = predictions_from_csv(text);
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back[i].sample_id, predictions[i].sample_id);
    EXPECT_EQ(back[i].likelihood_rg, predictions[i].likelihood_rg);
    EXPECT_EQ(back[i].referable, predictions[i].referable);
    EXPECT_EQ(back[i].ungradable, predictions[i].ungradable);
    EXPECT_EQ(back[i].ungradability, predictions[i].ungradability);
  }
}

TEST(Labels, RoundTripAndErrors) {
  const std::vector<LabelRecord> labels = {{"a", true, false}, {"b", false, true}};
  const auto text = labels_to_csv(labels);
  EXPECT_EQ(text, "sample_id,referable,ungradable\na,1,0\nb,0,1\n");
  const auto back = labels_from_csv(text);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].sample_id, "b");
  EXPECT_TRUE(back[1].ungradable);
  EXPECT_TRUE(throws_code(ErrorCode::DuplicateId,
                          [] { labels_from_csv("sample_id,referable,ungradable\na,1,0\na,0,0\n"); }));
  EXPECT_TRUE(throws_code(ErrorCode::ParseError,
                          [] { labels_from_csv("sample_id,referable,ungradable\n,1,0\n"); }));
  EXPECT_TRUE(throws_code(ErrorCode::ParseError,
                          [] { labels_from_csv("sample_id,referable,ungradable\na,yes,0\n"); }));
  EXPECT_TRUE(throws_code(ErrorCode::InvalidInput, [] { labels_to_csv({{"a,b", true, false}}); }));
}

TEST(AtomicWrite, ReplacesWholeFileAndLeavesNoTemporaries) {
  testutil::TempDir dir;
  const auto path = dir.file("out.txt");
  write_file_atomic(path, "first version, longer");
  write_file_atomic(path, "second");
  EXPECT_EQ(read_file(path), "second");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir.path())) ++entries;
  EXPECT_EQ(entries, 1u);
  EXPECT_TRUE(throws_code(ErrorCode::IoError,
                          [&] { write_file_atomic(dir.file("no/such/dir/x"), "data"); }));
}
