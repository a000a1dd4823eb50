#pragma once

#include <cstddef>
#include <vector>

#include "vmdtex/dataset/image.hpp"

namespace vmdtex::features {

inline constexpr std::size_t kHistogramBins = 256;

/// Normalized intensity histogram: probabilities sum to 1, all non-negative.
class Histogram {
 public:
  /// Throws Error{data, "BadHistogram"} if the probabilities are not a distribution
  /// (sum off by more than 1e-12 or a negative entry).
  static Histogram from_probabilities(std::vector<double> probabilities, std::size_t source_pixels = 0);

  const std::vector<double>& probabilities() const noexcept { return q_; }
  std::size_t bins() const noexcept { return q_.size(); }
  std::size_t source_pixels() const noexcept { return pixels_; }

 private:
  std::vector<double> q_;
  std::size_t pixels_ = 0;
};

/// Min-max rescales the mode onto 256 equal-width bins (constant modes fall
/// wholly into bin 0) and normalizes the counts by the pixel count.
Histogram intensity_histogram(const Grid& mode);

/// (1 / (1 - a)) log2(sum q^a). Throws Error{config, "BadOrder"} unless a > 0, a != 1.
double renyi_entropy(const Histogram& hist, double a);

/// (1 / (b - a)) log2(sum q^a / sum q^b). Throws Error{config, "BadOrder"} unless a, b > 0, a != b.
double kapur_entropy(const Histogram& hist, double a, double b);

/// Denominator of the Yager measure: bin count X (default) or source pixel count.
enum class YagerDenominator { bins, pixels };

/// 1 - sum |2 q_m - 1| / D.
double yager_entropy(const Histogram& hist, YagerDenominator denominator = YagerDenominator::bins);

}  // namespace vmdtex::features
