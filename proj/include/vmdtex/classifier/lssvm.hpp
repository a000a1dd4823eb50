#pragma once

#include <span>
#include <string>
#include <vector>

#include "vmdtex/selection/matrix.hpp"
#include "vmdtex/selection/zscore.hpp"

namespace vmdtex::classifier {

/// exp(-|x - z|^2 / (2 sigma^2)). Throws Error{data, "DimensionMismatch"} and
/// Error{config, "BadParams"} for sigma <= 0.
double rbf_kernel(std::span<const double> x, std::span<const double> z, double sigma);

/// Largest relative KKT residual accepted at training time.
inline constexpr double kKktTolerance = 1e-8;

struct LsSvmModel {
  std::size_t dim = 0;
  std::vector<double> support_inputs;  // row-major, rows() x dim
  std::vector<int> support_labels;     // +1 malignant, -1 benign
  std::vector<double> alphas;
  double bias = 0.0;
  double gamma = 1.0;
  double sigma = 1.0;
  double kkt_residual = 0.0;

  // Preprocessing from raw feature vectors, embedded so the model is self-contained.
  // Empty mask means the inputs are already in model space.
  std::vector<std::string> feature_names;  // all raw columns
  std::vector<bool> feature_mask;
  selection::ZScoreStats norm_stats;       // over the selected columns

  std::size_t rows() const noexcept { return support_labels.size(); }
};

struct Prediction {
  int label = 1;
  double score = 0.0;
};

/// Solves the bordered LS-SVM system
///   [ 0  y^T            ] [b]   [0]
///   [ y  Omega + I/gamma ] [a] = [1],   Omega_ij = y_i y_j K(x_i, x_j).
/// Throws SingleClass, BadParams, IllConditioned (relative residual > kKktTolerance).
LsSvmModel train_lssvm(std::span<const double> rows, std::size_t dim, std::span<const int> labels,
                       double gamma, double sigma);
LsSvmModel train_lssvm(const selection::FeatureMatrix& train, double gamma, double sigma);

/// Decision value sum_i a_i y_i K(x_i, x) + b; label +1 when score >= 0.
/// `x` is in model space (masked, normalized).
Prediction predict(const LsSvmModel& model, std::span<const double> x);

/// Applies the embedded mask and normalization to a raw feature vector first.
Prediction predict_raw(const LsSvmModel& model, std::span<const double> raw);

/// Masked, normalized copy of a raw feature vector.
std::vector<double> to_model_space(const LsSvmModel& model, std::span<const double> raw);

}  // namespace vmdtex::classifier
