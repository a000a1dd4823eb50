#pragma once

#include "vmdtex/dataset/image.hpp"

namespace vmdtex::features {

/// Fractal dimension of a square N x N intensity surface by differential box
/// counting.
///
/// Intensities are min-max rescaled to [0, 255] (a constant surface maps to 0).
/// For dyadic block sides s = 2, 4, ..., N/2, with box height h = 256 s / N,
/// each s x s block contributes ceil(max/h) - ceil(min/h) + 1 boxes. The
/// dimension is the least-squares slope of log N_s against log(N / s).
///
/// Throws Error{data, "DegenerateImage"} if the grid is not square or N < 8.
double fractal_dimension(const Grid& surface);

}  // namespace vmdtex::features
