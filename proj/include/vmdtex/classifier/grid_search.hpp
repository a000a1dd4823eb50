#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vmdtex/selection/matrix.hpp"

namespace vmdtex::classifier {

struct GridParams {
  std::vector<double> gammas{0.1, 1.0, 10.0, 100.0, 1000.0};
  std::vector<double> sigmas{0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  std::size_t inner_folds = 5;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;

  void validate() const;  // Error{config, "BadParams"}
};

struct GridCell {
  double gamma = 0.0;
  double sigma = 0.0;
  std::optional<double> accuracy;  // mean inner-fold accuracy; empty if the cell failed
  std::string failure;
};

struct GridResult {
  double gamma = 0.0;
  double sigma = 0.0;
  double accuracy = 0.0;
  std::vector<GridCell> table;  // gamma-major, in grid order
};

/// Row-wise stratified inner folds (labels +1/-1): each class shuffled with
/// the seed and dealt round-robin. Returns fold index per row.
std::vector<std::size_t> stratified_row_folds(const std::vector<int>& labels, std::size_t folds,
                                              std::uint64_t seed);

/// Picks (gamma, sigma) maximizing mean inner-fold accuracy; ties go to the
/// smaller gamma, then the smaller sigma. Failed cells are recorded, not
/// fatal; if every cell fails, Error{numerical, "GridSearchFailed"}.
GridResult grid_search(const selection::FeatureMatrix& train, const GridParams& params);

}  // namespace vmdtex::classifier
