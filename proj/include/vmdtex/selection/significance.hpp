#pragma once

#include <nlohmann/json.hpp>

#include "vmdtex/selection/matrix.hpp"
#include "vmdtex/selection/relieff.hpp"

namespace vmdtex::selection {

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;  // two-sided
};

/// Welch's unequal-variance t-test. Samples with fewer than two values, or
/// two constant samples with equal means, give p = 1; constant samples with
/// different means give p = 0.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

struct SignificanceParams {
  double p_threshold = 0.05;
  std::size_t fallback_count = 25;
};

/// Keeps features with p < threshold and positive weight. An empty result is
/// replaced by the top `fallback_count` features by weight and `fallback` set.
RankedFeatures significance_filter(const FeatureMatrix& matrix, RankedFeatures ranked,
                                   const SignificanceParams& params = {});

/// {weights, selected, p_values, fallback}
nlohmann::ordered_json selection_report(const RankedFeatures& ranked,
                                        const std::vector<std::string>& names);

}  // namespace vmdtex::selection
