#pragma once

// File formats:
//   features     binary "OODF" container, float32 little-endian, row-major
//   head/bundle  JSON document, strict schema
//   tables       comma-separated text with an exact header, LF line endings
//
// All writers go through a temporary file renamed into place, so a failed
// write never leaves a partial file at the destination. Byte layouts are
// documented in docs/FORMATS.md.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "oodscreen/calibration.hpp"
#include "oodscreen/ensemble.hpp"
#include "oodscreen/evaluation.hpp"
#include "oodscreen/pipeline.hpp"

namespace oodscreen::io {

inline constexpr std::string_view kFeatureMagic = "OODF";
inline constexpr std::uint16_t kFeatureVersion = 1;
inline constexpr std::uint16_t kFeatureDtypeFloat32 = 1;
inline constexpr std::size_t kFeatureHeaderSize = 24;

/// Feature rows as stored on disk, with their sample ids.
struct FeatureSet {
  std::vector<std::string> ids;
  FeatureMatrix<float> values;
};

std::string encode_features(const FeatureSet& set);
FeatureSet decode_features(std::string_view bytes);
void write_features(const std::filesystem::path& path, const FeatureSet& set);
FeatureSet read_features(const std::filesystem::path& path);

/// A linear head without calibration thresholds.
struct HeadDocument {
  std::string model_id;
  LinearHead<double> head;
  std::vector<std::string> class_names = kDefaultClassNames;
};

std::string head_to_json(const HeadDocument& doc);
HeadDocument head_from_json(std::string_view text);
void write_head(const std::filesystem::path& path, const HeadDocument& doc);
/// Accepts a head-only document or a full bundle (thresholds are ignored).
HeadDocument read_head(const std::filesystem::path& path);

std::string bundle_to_json(const ModelBundle& bundle);
ModelBundle bundle_from_json(std::string_view text);
void write_bundle(const std::filesystem::path& path, const ModelBundle& bundle);
ModelBundle read_bundle(const std::filesystem::path& path);

std::string score_table_to_csv(const ScoreTable& table);
ScoreTable score_table_from_csv(std::string_view text);
void write_score_table(const std::filesystem::path& path, const ScoreTable& table);
ScoreTable read_score_table(const std::filesystem::path& path);

std::string predictions_to_csv(const std::vector<FinalPrediction>& predictions);
std::vector<FinalPrediction> predictions_from_csv(std::string_view text);
void write_predictions(const std::filesystem::path& path,
                       const std::vector<FinalPrediction>& predictions);
std::vector<FinalPrediction> read_predictions(const std::filesystem::path& path);

std::string labels_to_csv(const std::vector<LabelRecord>& labels);
std::vector<LabelRecord> labels_from_csv(std::string_view text);
void write_labels(const std::filesystem::path& path, const std::vector<LabelRecord>& labels);
std::vector<LabelRecord> read_labels(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// 17 significant digits, as printf("%.17g") would produce.
std::string format_double(double value);

}  // namespace oodscreen::io
