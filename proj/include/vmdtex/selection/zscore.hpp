#pragma once

#include <span>
#include <vector>

#include "vmdtex/selection/matrix.hpp"

namespace vmdtex::selection {

/// Column centring/scaling fitted on training rows. A column whose population
/// std is below kMinScale keeps scale 1, so it is only centred.
struct ZScoreStats {
  static constexpr double kMinScale = 1e-12;
  std::vector<double> means;
  std::vector<double> scales;
};

ZScoreStats zscore_fit(const FeatureMatrix& train);
FeatureMatrix zscore_apply(const ZScoreStats& stats, const FeatureMatrix& matrix);
std::vector<double> zscore_apply(const ZScoreStats& stats, std::span<const double> row);

}  // namespace vmdtex::selection
