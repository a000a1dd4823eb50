#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vmdtex/classifier/grid_search.hpp"
#include "vmdtex/classifier/lssvm.hpp"
#include "vmdtex/dataset/manifest.hpp"
#include "vmdtex/evaluation/metrics.hpp"
#include "vmdtex/features/feature_csv.hpp"
#include "vmdtex/selection/relieff.hpp"
#include "vmdtex/selection/significance.hpp"

namespace vmdtex::evaluation {

enum class Protocol { kfold, holdout };

struct ExperimentConfig {
  Protocol protocol = Protocol::kfold;
  std::size_t k = 3;               // k-fold
  std::size_t repeats = 5;         // holdout
  double train_fraction = 0.7;     // holdout
  /// One magnification, or empty for one model per magnification plus "Full Dataset".
  std::optional<int> magnification;
  std::size_t relief_k = 10;
  selection::SignificanceParams significance;
  classifier::GridParams grid;     // grid.seed is replaced per fold
  std::uint64_t seed = 0;
  std::size_t jobs = 1;

  void validate() const;  // Error{config, ...}
};

/// Selection, normalization and classifier fitted on one training matrix.
struct FittedModel {
  classifier::LsSvmModel model;  // carries the feature mask and z-score stats
  selection::RankedFeatures ranking;
  classifier::GridResult grid;
  std::size_t relief_k = 0;
};

/// ReliefF (k clamped below the smallest class size) -> significance filter ->
/// z-score -> grid search -> LS-SVM, all on `train` only.
FittedModel fit_model(const selection::FeatureMatrix& train, const ExperimentConfig& config,
                      std::uint64_t seed);

struct FoldReport {
  std::size_t index = 0;
  std::vector<std::string> train_patients;
  std::vector<std::string> test_patients;
  std::size_t train_images = 0;
  std::size_t test_images = 0;
  std::size_t relief_k = 0;
  std::size_t selected_features = 0;
  bool selection_fallback = false;
  double gamma = 0.0;
  double sigma = 0.0;
  double inner_accuracy = 0.0;
  ConfusionCounts counts;
  ImageMetrics metrics;
  PatientRecognition recognition;
};

struct MeanStd {
  std::optional<double> mean;
  std::optional<double> stddev;  // sample std over folds where the metric is defined
};

struct ScopeReport {
  std::string name;  // "40X" ... or "Full Dataset"
  std::optional<int> magnification;
  std::vector<FoldReport> folds;
  ConfusionCounts pooled;
  ImageMetrics pooled_metrics;
  MeanStd accuracy, sensitivity, specificity, ppv, npv, prr;
};

struct ExperimentReport {
  std::uint64_t seed = 0;
  Protocol protocol = Protocol::kfold;
  std::size_t feature_count = 0;
  std::vector<ScopeReport> scopes;
};

/// Scopes are evaluated in order 40X, 100X, 200X, 400X, Full Dataset (only
/// those with samples). `table` must hold a row for every manifest sample.
ExperimentReport run_experiment(const dataset::Manifest& manifest, const features::FeatureTable& table,
                                const ExperimentConfig& config);

std::string scope_name(std::optional<int> magnification);

}  // namespace vmdtex::evaluation
