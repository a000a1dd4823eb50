#pragma once

#include <cstdint>
#include <vector>

#include "vmdtex/selection/matrix.hpp"

namespace vmdtex::selection {

struct RankedFeatures {
  std::vector<double> weights;        // in [-1, 1]
  std::vector<std::size_t> order;     // descending weight, ties by index
  std::vector<bool> selected_mask;
  std::vector<double> p_values;       // filled by significance_filter
  bool fallback = false;

  std::size_t selected_count() const;
};

struct ReliefParams {
  std::size_t k_neighbors = 10;
  /// Reference instances to visit; 0 visits all of them and makes the seed irrelevant.
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  /// Worker threads for the per-instance pass (0 = all cores). Output does not depend on it.
  std::size_t jobs = 1;
};

/// Two-class ReliefF.
///
/// Columns are scaled to [0, 1] by their range (constant columns contribute
/// nothing), distance is L1 on the scaled values, and neighbour ties go to the
/// lower row index. selected_mask starts as weight > 0.
/// Throws Error{data, "SingleClass"} and Error{config, "BadK"}.
RankedFeatures relieff(const FeatureMatrix& matrix, const ReliefParams& params = {});

/// Indices sorted by descending weight, ties by ascending index.
std::vector<std::size_t> rank_order(const std::vector<double>& weights);

}  // namespace vmdtex::selection
