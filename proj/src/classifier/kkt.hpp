#pragma once

#include <span>
#include <vector>

namespace vmdtex::classifier::detail {

struct KktSolution {
  std::vector<double> alphas;
  double bias = 0.0;
  double residual = 0.0;
};

/// Row-major n x n matrix of squared Euclidean distances.
std::vector<double> pairwise_squared_distances(std::span<const double> rows, std::size_t dim);

/// Solves the LS-SVM system from precomputed squared distances. Inputs are assumed valid.
KktSolution solve_kkt(std::span<const double> sq_dist, std::span<const int> labels, double gamma,
                      double sigma);

}  // namespace vmdtex::classifier::detail
