#include "oodscreen/io.hpp"

#include <unistd.h>

#include <array>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>
#include <unordered_set>

#include <json.hpp>

namespace oodscreen::io {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// little-endian primitives

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<char>((v >> shift) & 0xFF));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int shift = 0; shift < 64; shift += 8) out.push_back(static_cast<char>((v >> shift) & 0xFF));
}

class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  std::size_t remaining() const noexcept { return bytes_.size() - offset_; }
  std::size_t offset() const noexcept { return offset_; }

  std::string_view take(std::size_t n, const char* what) {
    if (remaining() < n) {
      throw Error(ErrorCode::TruncationError, std::string("file truncated while reading ") + what +
                                                  " at byte offset " + std::to_string(offset_));
    }
    const auto view = bytes_.substr(offset_, n);
    offset_ += n;
    return view;
  }

  std::uint64_t uint_le(std::size_t width, const char* what) {
    const auto raw = take(width, what);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < width; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(raw[i])) << (8 * i);
    }
    return v;
  }

 private:
  std::string_view bytes_;
  std::size_t offset_ = 0;
};

// ---------------------------------------------------------------------------
// text helpers

void check_table_id(std::string_view id) {
  if (id.empty() || id.find_first_of(",\n\r") != std::string_view::npos) {
    throw Error(ErrorCode::InvalidInput,
                "sample id '" + std::string(id) + "' is empty or contains a comma or line break");
  }
}

void check_finite_value(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::InvalidInput, std::string(what) + " is not finite");
  }
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    cells.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

// Lines of a LF-terminated text file. A single trailing LF is allowed.
std::vector<std::string_view> split_lines(std::string_view text) {
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  if (text.empty()) return {};
  return split(text, '\n');
}

struct CsvTable {
  std::vector<std::vector<std::string_view>> rows;  // without the header
};

CsvTable parse_csv(std::string_view text, const std::string& expected_header) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw Error(ErrorCode::FormatError, "missing header row");
  if (lines[0] != expected_header) {
    throw Error(ErrorCode::FormatError, "header mismatch: expected '" + expected_header +
                                            "', got '" + std::string(lines[0]) + "'");
  }
  const std::size_t width = split(expected_header, ',').size();
  CsvTable table;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    auto cells = split(lines[r], ',');
    if (cells.size() != width) {
      throw Error(ErrorCode::ParseError, "row " + std::to_string(r) + ": expected " +
                                             std::to_string(width) + " columns, got " +
                                             std::to_string(cells.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

std::string cell_context(std::size_t row, std::string_view column) {
  return "row " + std::to_string(row + 1) + ", column '" + std::string(column) + "'";
}

double parse_double_cell(std::string_view cell, std::size_t row, std::string_view column) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::ParseError, cell_context(row, column) + ": cannot parse '" +
                                           std::string(cell) + "' as a finite number");
  }
  return v;
}

bool parse_flag_cell(std::string_view cell, std::size_t row, std::string_view column) {
  if (cell == "0") return false;
  if (cell == "1") return true;
  throw Error(ErrorCode::ParseError,
              cell_context(row, column) + ": expected 0 or 1, got '" + std::string(cell) + "'");
}

std::string parse_id_cell(std::string_view cell, std::size_t row,
                          std::unordered_set<std::string>& seen) {
  if (cell.empty()) throw Error(ErrorCode::ParseError, cell_context(row, "sample_id") + ": empty id");
  std::string id(cell);
  if (!seen.insert(id).second) throw Error(ErrorCode::DuplicateId, "duplicate sample id '" + id + "'");
  return id;
}

// ---------------------------------------------------------------------------
// JSON helpers

const std::set<std::string> kHeadKeys = {"model_id", "m", "K", "class_names", "weights", "bias"};
const std::set<std::string> kThresholdKeys = {"c", "tau", "temperature", "calibration_meta"};
const std::set<std::string> kMetaKeys = {"n_validation", "activation_percentile",
                                         "energy_percentile", "activation_quantile",
                                         "energy_quantile"};

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::FormatError, std::string("malformed JSON document: ") + e.what());
  }
}

void check_keys(const json& object, const std::set<std::string>& required,
                const std::set<std::string>& optional, const std::string& where) {
  if (!object.is_object()) {
    throw Error(ErrorCode::SchemaError,
                (where.empty() ? std::string("document") : where.substr(4)) + " must be a JSON object");
  }
  for (const auto& key : required) {
    if (!object.contains(key)) throw Error(ErrorCode::SchemaError, "missing key '" + key + "'" + where);
  }
  for (const auto& [key, value] : object.items()) {
    if (!required.contains(key) && !optional.contains(key)) {
      throw Error(ErrorCode::SchemaError, "unknown key '" + key + "'" + where);
    }
  }
}

double get_number(const json& object, const std::string& key) {
  const auto& v = object.at(key);
  if (!v.is_number()) throw Error(ErrorCode::SchemaError, "key '" + key + "' must be a number");
  return v.get<double>();
}

std::uint64_t get_count(const json& object, const std::string& key) {
  const auto& v = object.at(key);
  if (!v.is_number_unsigned()) {
    throw Error(ErrorCode::SchemaError, "key '" + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::vector<double> get_number_array(const json& object, const std::string& key) {
  const auto& v = object.at(key);
  if (!v.is_array()) throw Error(ErrorCode::SchemaError, "key '" + key + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& item : v) {
    if (!item.is_number()) {
      throw Error(ErrorCode::SchemaError, "key '" + key + "' must hold only numbers");
    }
    out.push_back(item.get<double>());
  }
  return out;
}

json head_fields(const std::string& model_id, const LinearHead<double>& head,
                 const std::vector<std::string>& class_names) {
  head.validate();
  if (class_names.size() != static_cast<std::size_t>(head.num_classes())) {
    throw Error(ErrorCode::DimensionError, "class_names length does not match class count");
  }
  json doc;
  doc["model_id"] = model_id;
  doc["m"] = static_cast<std::uint64_t>(head.input_dim());
  doc["K"] = static_cast<std::uint64_t>(head.num_classes());
  doc["class_names"] = class_names;
  doc["weights"] = std::vector<double>(head.weights.data(), head.weights.data() + head.weights.size());
  doc["bias"] = std::vector<double>(head.bias.data(), head.bias.data() + head.bias.size());
  return doc;
}

HeadDocument parse_head_fields(const json& doc) {
  HeadDocument out;
  if (!doc.at("model_id").is_string()) throw Error(ErrorCode::SchemaError, "key 'model_id' must be a string");
  out.model_id = doc.at("model_id").get<std::string>();

  const std::uint64_t m = get_count(doc, "m");
  const std::uint64_t k = get_count(doc, "K");
  if (m < 1) throw Error(ErrorCode::DimensionError, "m must be >= 1");
  if (k < 2) throw Error(ErrorCode::DimensionError, "K must be >= 2");

  const auto& names = doc.at("class_names");
  if (!names.is_array() || !std::all_of(names.begin(), names.end(), [](const json& n) { return n.is_string(); })) {
    throw Error(ErrorCode::SchemaError, "key 'class_names' must be an array of strings");
  }
  out.class_names = names.get<std::vector<std::string>>();
  if (out.class_names.size() != k) {
    throw Error(ErrorCode::DimensionError, "class_names has " + std::to_string(out.class_names.size()) +
                                               " entries but K = " + std::to_string(k));
  }

  const auto weights = get_number_array(doc, "weights");
  if (m > std::numeric_limits<std::uint64_t>::max() / k || weights.size() != m * k) {
    throw Error(ErrorCode::DimensionError, "weights has " + std::to_string(weights.size()) +
                                               " entries but m * K = " + std::to_string(m) + " * " +
                                               std::to_string(k));
  }
  const auto bias = get_number_array(doc, "bias");
  if (bias.size() != k) {
    throw Error(ErrorCode::DimensionError, "bias has " + std::to_string(bias.size()) +
                                               " entries but K = " + std::to_string(k));
  }
  out.head.weights = Eigen::Map<const FeatureMatrix<double>>(weights.data(), static_cast<Index>(m),
                                                              static_cast<Index>(k));
  out.head.bias = Eigen::Map<const Eigen::VectorXd>(bias.data(), static_cast<Index>(k));
  return out;
}

// ---------------------------------------------------------------------------

std::string score_table_header(Index classes) {
  std::string header = "sample_id";
  for (Index k = 0; k < classes; ++k) header += ",logit_" + std::to_string(k);
  header += ",likelihood_rg,energy_raw,energy_rectified,ood,ungradability";
  return header;
}

const std::string kPredictionHeader = "sample_id,likelihood_rg,referable,ungradable,ungradability";
const std::string kLabelHeader = "sample_id,referable,ungradable";

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buffer{};
  const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                                       std::chars_format::general, 17);
  if (ec != std::errc{}) throw Error(ErrorCode::InvalidInput, "cannot format number");
  return {buffer.data(), ptr};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for reading");
  std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::IoError, "error reading '" + path.string() + "'");
  return contents;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  static std::atomic<unsigned> counter{0};
  auto tmp = path;
  tmp += ".tmp" + std::to_string(::getpid()) + "_" + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open '" + tmp.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::IoError, "error writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw Error(ErrorCode::IoError, "cannot move output into '" + path.string() + "': " + ec.message());
  }
}

// ---------------------------------------------------------------------------
// features

std::string encode_features(const FeatureSet& set) {
  const auto rows = static_cast<std::size_t>(set.values.rows());
  if (set.ids.size() != rows) {
    throw Error(ErrorCode::DimensionError,
                std::to_string(set.ids.size()) + " ids for " + std::to_string(rows) + " rows");
  }
  if (!set.values.allFinite()) throw Error(ErrorCode::InvalidInput, "features contain non-finite values");
  std::unordered_set<std::string_view> seen;
  for (const auto& id : set.ids) {
    if (id.size() > std::numeric_limits<std::uint16_t>::max()) {
      throw Error(ErrorCode::InvalidInput, "sample id longer than 65535 bytes");
    }
    if (!seen.insert(id).second) throw Error(ErrorCode::DuplicateId, "duplicate sample id '" + id + "'");
  }

  std::string out;
  out.reserve(kFeatureHeaderSize + 4 * static_cast<std::size_t>(set.values.size()));
  out.append(kFeatureMagic);
  put_u16(out, kFeatureVersion);
  put_u16(out, kFeatureDtypeFloat32);
  put_u64(out, rows);
  put_u64(out, static_cast<std::uint64_t>(set.values.cols()));
  for (const auto& id : set.ids) {
    put_u16(out, static_cast<std::uint16_t>(id.size()));
    out.append(id);
  }
  for (Index r = 0; r < set.values.rows(); ++r) {
    for (Index c = 0; c < set.values.cols(); ++c) {
      put_u32(out, std::bit_cast<std::uint32_t>(set.values(r, c)));
    }
  }
  return out;
}

FeatureSet decode_features(std::string_view bytes) {
  ByteReader reader(bytes);
  if (reader.take(4, "magic") != kFeatureMagic) {
    throw Error(ErrorCode::FormatError, "bad magic: expected \"OODF\"");
  }
  if (const auto version = reader.uint_le(2, "version"); version != kFeatureVersion) {
    throw Error(ErrorCode::FormatError, "unsupported version " + std::to_string(version));
  }
  if (const auto dtype = reader.uint_le(2, "dtype"); dtype != kFeatureDtypeFloat32) {
    throw Error(ErrorCode::FormatError, "unsupported dtype " + std::to_string(dtype));
  }
  const std::uint64_t rows = reader.uint_le(8, "n_rows");
  const std::uint64_t cols = reader.uint_le(8, "n_cols");

  // Each id costs at least its 2-byte length prefix.
  if (rows > reader.remaining() / 2) {
    throw Error(ErrorCode::TruncationError,
                "n_rows " + std::to_string(rows) + " exceeds what the remaining bytes can hold");
  }
  FeatureSet set;
  set.ids.reserve(static_cast<std::size_t>(rows));
  std::unordered_set<std::string> seen;
  for (std::uint64_t r = 0; r < rows; ++r) {
    const auto length = static_cast<std::size_t>(reader.uint_le(2, "id length"));
    std::string id(reader.take(length, "sample id"));
    if (!seen.insert(id).second) throw Error(ErrorCode::DuplicateId, "duplicate sample id '" + id + "'");
    set.ids.push_back(std::move(id));
  }

  if (cols != 0 && rows > std::numeric_limits<std::uint64_t>::max() / cols / 4) {
    throw Error(ErrorCode::FormatError, "n_rows * n_cols overflows");
  }
  const std::uint64_t data_bytes = rows * cols * 4;
  if (reader.remaining() < data_bytes) {
    throw Error(ErrorCode::TruncationError, "data block holds " + std::to_string(reader.remaining()) +
                                                " bytes, expected " + std::to_string(data_bytes));
  }
  if (reader.remaining() > data_bytes) {
    throw Error(ErrorCode::FormatError, std::to_string(reader.remaining() - data_bytes) +
                                            " trailing bytes after the data block");
  }

  set.values.resize(static_cast<Index>(rows), static_cast<Index>(cols));
  for (Index r = 0; r < set.values.rows(); ++r) {
    for (Index c = 0; c < set.values.cols(); ++c) {
      const float v = std::bit_cast<float>(static_cast<std::uint32_t>(reader.uint_le(4, "data")));
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::FormatError, "non-finite value at row " + std::to_string(r) +
                                                ", column " + std::to_string(c));
      }
      set.values(r, c) = v;
    }
  }
  return set;
}

void write_features(const std::filesystem::path& path, const FeatureSet& set) {
  write_file_atomic(path, encode_features(set));
}

FeatureSet read_features(const std::filesystem::path& path) { return decode_features(read_file(path)); }

// ---------------------------------------------------------------------------
// head / bundle

std::string head_to_json(const HeadDocument& doc) {
  return head_fields(doc.model_id, doc.head, doc.class_names).dump(2) + "\n";
}

HeadDocument head_from_json(std::string_view text) {
  const json doc = parse_json(text);
  check_keys(doc, kHeadKeys, kThresholdKeys, "");
  return parse_head_fields(doc);
}

void write_head(const std::filesystem::path& path, const HeadDocument& doc) {
  write_file_atomic(path, head_to_json(doc));
}

HeadDocument read_head(const std::filesystem::path& path) { return head_from_json(read_file(path)); }

std::string bundle_to_json(const ModelBundle& bundle) {
  bundle.validate();
  json doc = head_fields(bundle.model_id, bundle.head, bundle.class_names);
  doc["c"] = bundle.c;
  doc["tau"] = bundle.tau;
  doc["temperature"] = bundle.temperature;
  doc["calibration_meta"] = {
      {"n_validation", bundle.meta.n_validation},
      {"activation_percentile", bundle.meta.activation_percentile},
      {"energy_percentile", bundle.meta.energy_percentile},
      {"activation_quantile", bundle.meta.activation_quantile},
      {"energy_quantile", bundle.meta.energy_quantile},
  };
  return doc.dump(2) + "\n";
}

ModelBundle bundle_from_json(std::string_view text) {
  const json doc = parse_json(text);
  std::set<std::string> required = kHeadKeys;
  required.insert(kThresholdKeys.begin(), kThresholdKeys.end());
  check_keys(doc, required, {}, "");
  const auto& meta = doc.at("calibration_meta");
  check_keys(meta, kMetaKeys, {}, " in calibration_meta");

  auto head = parse_head_fields(doc);
  ModelBundle bundle;
  bundle.model_id = std::move(head.model_id);
  bundle.head = std::move(head.head);
  bundle.class_names = std::move(head.class_names);
  bundle.c = get_number(doc, "c");
  bundle.tau = get_number(doc, "tau");
  bundle.temperature = get_number(doc, "temperature");
  bundle.meta.n_validation = get_count(meta, "n_validation");
  bundle.meta.activation_percentile = get_number(meta, "activation_percentile");
  bundle.meta.energy_percentile = get_number(meta, "energy_percentile");
  bundle.meta.activation_quantile = get_number(meta, "activation_quantile");
  bundle.meta.energy_quantile = get_number(meta, "energy_quantile");
  try {
    bundle.validate();
  } catch (const Error& e) {
    // Out-of-range values in a document are a schema problem of that document.
    if (e.code() == ErrorCode::DimensionError) throw;
    throw Error(ErrorCode::SchemaError, e.what());
  }
  return bundle;
}

void write_bundle(const std::filesystem::path& path, const ModelBundle& bundle) {
  write_file_atomic(path, bundle_to_json(bundle));
}

ModelBundle read_bundle(const std::filesystem::path& path) { return bundle_from_json(read_file(path)); }

// ---------------------------------------------------------------------------
// score tables

std::string score_table_to_csv(const ScoreTable& table) {
  const Index classes = table.empty() ? 2 : table.front().logits_raw.size();
  std::string out = score_table_header(classes) + "\n";
  for (const auto& s : table) {
    check_table_id(s.sample_id);
    if (s.logits_raw.size() != classes) {
      throw Error(ErrorCode::DimensionError, "rows carry different logit counts");
    }
    out += s.sample_id;
    for (Index k = 0; k < classes; ++k) {
      check_finite_value(s.logits_raw(k), "logit");
      out += "," + format_double(s.logits_raw(k));
    }
    for (double v : {s.likelihood_rg, s.energy_raw, s.energy_rectified}) {
      check_finite_value(v, "score value");
      out += "," + format_double(v);
    }
    check_finite_value(s.ungradability, "ungradability");
    out += s.ood ? ",1," : ",0,";
    out += format_double(s.ungradability) + "\n";
  }
  return out;
}

ScoreTable score_table_from_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw Error(ErrorCode::FormatError, "missing header row");
  const auto columns = split(lines[0], ',');
  constexpr std::size_t kFixedColumns = 6;
  const Index classes =
      columns.size() >= kFixedColumns + 2 ? static_cast<Index>(columns.size() - kFixedColumns) : 2;
  const std::string header = score_table_header(classes);
  const auto csv = parse_csv(text, header);
  const auto names = split(header, ',');

  ScoreTable table;
  table.reserve(csv.rows.size());
  std::unordered_set<std::string> seen;
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& cells = csv.rows[r];
    SampleScore s;
    s.sample_id = parse_id_cell(cells[0], r, seen);
    s.logits_raw.resize(classes);
    std::size_t col = 1;
    for (Index k = 0; k < classes; ++k, ++col) s.logits_raw(k) = parse_double_cell(cells[col], r, names[col]);
    s.likelihood_rg = parse_double_cell(cells[col], r, names[col]);
    ++col;
    s.energy_raw = parse_double_cell(cells[col], r, names[col]);
    ++col;
    s.energy_rectified = parse_double_cell(cells[col], r, names[col]);
    ++col;
    s.ood = parse_flag_cell(cells[col], r, names[col]);
    ++col;
    s.ungradability = parse_double_cell(cells[col], r, names[col]);
    table.push_back(std::move(s));
  }
  return table;
}

void write_score_table(const std::filesystem::path& path, const ScoreTable& table) {
  write_file_atomic(path, score_table_to_csv(table));
}

ScoreTable read_score_table(const std::filesystem::path& path) {
  return score_table_from_csv(read_file(path));
}

// ---------------------------------------------------------------------------
// predictions

std::string predictions_to_csv(const std::vector<FinalPrediction>& predictions) {
  std::string out = kPredictionHeader + "\n";
  for (const auto& p : predictions) {
    check_table_id(p.sample_id);
    check_finite_value(p.likelihood_rg, "likelihood");
    check_finite_value(p.ungradability, "ungradability");
    out += p.sample_id + "," + format_double(p.likelihood_rg) + (p.referable ? ",1" : ",0") +
           (p.ungradable ? ",1," : ",0,") + format_double(p.ungradability) + "\n";
  }
  return out;
}

std::vector<FinalPrediction> predictions_from_csv(std::string_view text) {
  const auto csv = parse_csv(text, kPredictionHeader);
  std::vector<FinalPrediction> out;
  out.reserve(csv.rows.size());
  std::unordered_set<std::string> seen;
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& cells = csv.rows[r];
    FinalPrediction p;
    p.sample_id = parse_id_cell(cells[0], r, seen);
    p.likelihood_rg = parse_double_cell(cells[1], r, "likelihood_rg");
    p.referable = parse_flag_cell(cells[2], r, "referable");
    p.ungradable = parse_flag_cell(cells[3], r, "ungradable");
    p.ungradability = parse_double_cell(cells[4], r, "ungradability");
    out.push_back(std::move(p));
  }
  return out;
}

void write_predictions(const std::filesystem::path& path,
                       const std::vector<FinalPrediction>& predictions) {
  write_file_atomic(path, predictions_to_csv(predictions));
}

std::vector<FinalPrediction> read_predictions(const std::filesystem::path& path) {
  return predictions_from_csv(read_file(path));
}

// ---------------------------------------------------------------------------
// labels

std::string labels_to_csv(const std::vector<LabelRecord>& labels) {
  std::string out = kLabelHeader + "\n";
  for (const auto& l : labels) {
    check_table_id(l.sample_id);
    out += l.sample_id + (l.referable ? ",1" : ",0") + (l.ungradable ? ",1\n" : ",0\n");
  }
  return out;
}

std::vector<LabelRecord> labels_from_csv(std::string_view text) {
  const auto csv = parse_csv(text, kLabelHeader);
  std::vector<LabelRecord> out;
  out.reserve(csv.rows.size());
  std::unordered_set<std::string> seen;
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& cells = csv.rows[r];
    LabelRecord l;
    l.sample_id = parse_id_cell(cells[0], r, seen);
    l.referable = parse_flag_cell(cells[1], r, "referable");
    l.ungradable = parse_flag_cell(cells[2], r, "ungradable");
    out.push_back(std::move(l));
  }
  return out;
}

void write_labels(const std::filesystem::path& path, const std::vector<LabelRecord>& labels) {
  write_file_atomic(path, labels_to_csv(labels));
}

std::vector<LabelRecord> read_labels(const std::filesystem::path& path) {
  return labels_from_csv(read_file(path));
}

}  // namespace oodscreen::io
