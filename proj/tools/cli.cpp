#include "cli.hpp"

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oodscreen/calibration.hpp"
#include "oodscreen/ensemble.hpp"
#include "oodscreen/evaluation.hpp"
#include "oodscreen/io.hpp"
#include "oodscreen/parallel.hpp"
#include "oodscreen/pipeline.hpp"
#include "oodscreen/synthetic.hpp"

namespace oodscreen::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string one_line(std::string text) {
  for (char& ch : text) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  return text;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::CalibrationError:
    case ErrorCode::DegenerateLabels:
    case ErrorCode::DegenerateMarginals:
    case ErrorCode::InvalidThreshold:
    case ErrorCode::InvalidTemperature:
      return kComputationError;
    default:
      return kDataError;
  }
}

void require_open_unit(double value, const char* flag, double low, double high) {
  if (!std::isfinite(value) || !(value > low) || !(value < high)) {
    throw UsageError(std::string(flag) + " must lie strictly inside (" + io::format_double(low) +
                     ", " + io::format_double(high) + ")");
  }
}

FeatureMatrix<double> as_double(const io::FeatureSet& set) { return set.values.cast<double>(); }

// ---------------------------------------------------------------------------

struct CalibrateArgs {
  std::string features;
  std::string head;
  double activation_pct = 90.0;
  double energy_pct = 95.0;
  double temperature = 1.0;
  std::string out;
};

int run_calibrate(const CalibrateArgs& args, std::ostream& out) {
  require_open_unit(args.activation_pct, "--activation-pct", 0.0, 100.0);
  require_open_unit(args.energy_pct, "--energy-pct", 0.0, 100.0);
  if (!std::isfinite(args.temperature) || !(args.temperature > 0.0)) {
    throw UsageError("--temperature must be finite and > 0");
  }

  const auto features = io::read_features(args.features);
  const auto head = io::read_head(args.head);
  if (features.values.cols() != head.head.input_dim()) {
    throw Error(ErrorCode::DimensionError,
                "feature dimension " + std::to_string(features.values.cols()) +
                    " != head input dimension " + std::to_string(head.head.input_dim()));
  }

  CalibrationConfig cfg;
  cfg.activation_percentile = args.activation_pct;
  cfg.energy_percentile = args.energy_pct;
  cfg.temperature = args.temperature;

  const FeatureMatrix<double> validation = as_double(features);
  ModelBundle bundle = calibrate(validation, head.head, cfg, head.model_id);
  bundle.class_names = head.class_names;
  const auto energies = rectified_energies(validation, bundle.head, bundle.c, bundle.temperature);
  const double retention = id_retention(energies, bundle.tau);

  io::write_bundle(args.out, bundle);
  out << "c=" << io::format_double(bundle.c) << " tau=" << io::format_double(bundle.tau)
      << " id_retention=" << io::format_double(retention) << "\n";
  return kOk;
}

struct ScoreArgs {
  std::string features;
  std::string bundle;
  std::string likelihood_from = "raw";
  std::string out;
};

int run_score(const ScoreArgs& args) {
  const auto features = io::read_features(args.features);
  const auto bundle = io::read_bundle(args.bundle);
  ScoreOptions options;
  options.likelihood_from =
      args.likelihood_from == "rectified" ? LikelihoodSource::Rectified : LikelihoodSource::Raw;
  if (features.values.rows() > 0 && features.values.cols() != bundle.head.input_dim()) {
    throw Error(ErrorCode::DimensionError,
                "feature dimension " + std::to_string(features.values.cols()) +
                    " != bundle input dimension " + std::to_string(bundle.head.input_dim()));
  }
  const auto table = score_batch(as_double(features), features.ids, bundle, options);
  io::write_score_table(args.out, table);
  return kOk;
}

struct EnsembleArgs {
  std::vector<std::string> scores;
  double likelihood_threshold = 0.5;
  std::string tie_break = "ungradable";
  std::string out;
};

int run_ensemble(const EnsembleArgs& args) {
  require_open_unit(args.likelihood_threshold, "--likelihood-threshold", 0.0, 1.0);
  std::vector<ScoreTable> tables;
  tables.reserve(args.scores.size());
  for (const auto& path : args.scores) tables.push_back(io::read_score_table(path));
  EnsembleConfig cfg;
  cfg.likelihood_threshold = args.likelihood_threshold;
  cfg.tie_break_ungradable = args.tie_break == "ungradable";
  io::write_predictions(args.out, ensemble_predict(tables, cfg));
  return kOk;
}

struct EvaluateArgs {
  std::string predictions;
  std::string labels;
  double min_specificity = 0.9;
  double sens_at = 0.95;
  std::string out;
};

int run_evaluate(const EvaluateArgs& args, std::ostream& out) {
  require_open_unit(args.min_specificity, "--min-specificity", 0.0, 1.0);
  require_open_unit(args.sens_at, "--sens-at", 0.0, 1.0);
  const auto predictions = io::read_predictions(args.predictions);
  const auto labels = io::read_labels(args.labels);
  EvaluationConfig cfg;
  cfg.min_specificity = args.min_specificity;
  cfg.sensitivity_at = args.sens_at;
  const std::string report = format_report(evaluate(predictions, labels, cfg));
  io::write_file_atomic(args.out, report);
  out << report;
  return kOk;
}

struct SyntheticArgs {
  long long n_id = 0;
  long long n_ood = 0;
  long long dim = 0;
  std::uint64_t seed = 0;
  double ood_sharpness = 1.0;
  std::uint64_t model_seed = 0;
  double head_jitter = 0.0;
  std::string out_features;
  std::string out_head;
  std::string out_labels;
};

int run_gen_synthetic(const SyntheticArgs& args) {
  if (args.n_id <= 0) throw UsageError("--n-id must be a positive integer");
  if (args.n_ood < 0) throw UsageError("--n-ood must be a non-negative integer");
  if (args.dim <= 0) throw UsageError("--dim must be a positive integer");
  if (!std::isfinite(args.ood_sharpness) || args.ood_sharpness < 0.0) {
    throw UsageError("--ood-sharpness must be finite and >= 0");
  }
  if (!std::isfinite(args.head_jitter) || args.head_jitter < 0.0) {
    throw UsageError("--head-jitter must be finite and >= 0");
  }
  SyntheticConfig cfg;
  cfg.n_id = static_cast<std::size_t>(args.n_id);
  cfg.n_ood = static_cast<std::size_t>(args.n_ood);
  cfg.dim = static_cast<std::size_t>(args.dim);
  cfg.seed = args.seed;
  cfg.ood_sharpness = args.ood_sharpness;
  cfg.model_seed = args.model_seed;
  cfg.head_jitter = args.head_jitter;

  const auto data = generate_synthetic(cfg);
  io::write_features(args.out_features, data.features);
  io::write_head(args.out_head, data.head);
  io::write_labels(args.out_labels, data.labels);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy-based out-of-distribution screening on exported features", "oodscreen"};
  app.require_subcommand(1);

  CalibrateArgs calibrate_args;
  auto* calibrate_cmd = app.add_subcommand("calibrate", "Fit c and tau on validation features");
  calibrate_cmd->add_option("--features", calibrate_args.features, "Validation feature file")->required();
  calibrate_cmd->add_option("--head", calibrate_args.head, "Head document (thresholds not needed)")->required();
  calibrate_cmd->add_option("--activation-pct", calibrate_args.activation_pct, "Activation percentile")
      ->capture_default_str();
  calibrate_cmd->add_option("--energy-pct", calibrate_args.energy_pct, "Energy percentile")
      ->capture_default_str();
  calibrate_cmd->add_option("--temperature", calibrate_args.temperature, "Energy temperature")
      ->capture_default_str();
  calibrate_cmd->add_option("--out", calibrate_args.out, "Output bundle")->required();

  ScoreArgs score_args;
  auto* score_cmd = app.add_subcommand("score", "Score features with one calibrated bundle");
  score_cmd->add_option("--features", score_args.features, "Feature file")->required();
  score_cmd->add_option("--bundle", score_args.bundle, "Calibrated bundle")->required();
  score_cmd->add_option("--likelihood-from", score_args.likelihood_from, "Logits behind the likelihood")
      ->check(CLI::IsMember({"raw", "rectified"}))
      ->capture_default_str();
  score_cmd->add_option("--out", score_args.out, "Output score table")->required();

  EnsembleArgs ensemble_args;
  auto* ensemble_cmd = app.add_subcommand("ensemble", "Combine per-model score tables");
  ensemble_cmd->add_option("--scores", ensemble_args.scores, "Score tables, one per model")
      ->required()
      ->expected(1, -1);
  ensemble_cmd->add_option("--likelihood-threshold", ensemble_args.likelihood_threshold,
                           "Referable decision threshold")
      ->capture_default_str();
  ensemble_cmd->add_option("--tie-break", ensemble_args.tie_break, "Outcome of tied votes")
      ->check(CLI::IsMember({"ungradable", "gradable"}))
      ->capture_default_str();
  ensemble_cmd->add_option("--out", ensemble_args.out, "Output predictions")->required();

  EvaluateArgs evaluate_args;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Screening and ungradability metrics");
  evaluate_cmd->add_option("--predictions", evaluate_args.predictions, "Prediction file")->required();
  evaluate_cmd->add_option("--labels", evaluate_args.labels, "Label file")->required();
  evaluate_cmd->add_option("--min-specificity", evaluate_args.min_specificity,
                           "Lower specificity bound of the partial AUC")
      ->capture_default_str();
  evaluate_cmd->add_option("--sens-at", evaluate_args.sens_at, "Specificity for the sensitivity figure")
      ->capture_default_str();
  evaluate_cmd->add_option("--out", evaluate_args.out, "Output report")->required();

  SyntheticArgs synthetic_args;
  auto* synthetic_cmd = app.add_subcommand("gen-synthetic", "Write a seeded synthetic fixture");
  synthetic_cmd->add_option("--n-id", synthetic_args.n_id, "In-distribution rows")->required();
  synthetic_cmd->add_option("--n-ood", synthetic_args.n_ood, "Out-of-distribution rows")->required();
  synthetic_cmd->add_option("--dim", synthetic_args.dim, "Feature dimension")->required();
  synthetic_cmd->add_option("--seed", synthetic_args.seed, "Sample seed")->required();
  synthetic_cmd->add_option("--ood-sharpness", synthetic_args.ood_sharpness,
                            "Strength of the OOD shift (0 = identical to ID)")
      ->capture_default_str();
  synthetic_cmd->add_option("--model-seed", synthetic_args.model_seed, "Seed of the profile and head")
      ->capture_default_str();
  synthetic_cmd->add_option("--head-jitter", synthetic_args.head_jitter,
                            "Relative Gaussian noise added to the head weights")
      ->capture_default_str();
  synthetic_cmd->add_option("--out-features", synthetic_args.out_features, "Output feature file")->required();
  synthetic_cmd->add_option("--out-head", synthetic_args.out_head, "Output head document")->required();
  synthetic_cmd->add_option("--out-labels", synthetic_args.out_labels, "Output label file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "oodscreen: error: Usage: " << one_line(e.what()) << "\n";
    return kUsageError;
  }

  try {
    max_threads();
  } catch (const Error& e) {
    err << "oodscreen: error: Usage: " << one_line(e.what()) << "\n";
    return kUsageError;
  }

  try {
    if (*calibrate_cmd) return run_calibrate(calibrate_args, out);
    if (*score_cmd) return run_score(score_args);
    if (*ensemble_cmd) return run_ensemble(ensemble_args);
    if (*evaluate_cmd) return run_evaluate(evaluate_args, out);
    if (*synthetic_cmd) return run_gen_synthetic(synthetic_args);
  } catch (const UsageError& e) {
    err << "oodscreen: error: Usage: " << one_line(e.what()) << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "oodscreen: error: " << to_string(e.code()) << ": " << one_line(e.what()) << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "oodscreen: error: Internal: " << one_line(e.what()) << "\n";
    return kComputationError;
  }
  return kUsageError;
}

}  // namespace oodscreen::cli
