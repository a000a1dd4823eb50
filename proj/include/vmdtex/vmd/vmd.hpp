#pragma once

#include <cstdint>
#include <vector>

#include "vmdtex/dataset/image.hpp"

namespace vmdtex::vmd {

/// Normalized 2D frequency in cycles/pixel.
struct Frequency2D {
  double x = 0.0;
  double y = 0.0;

  double norm() const noexcept;
  bool operator==(const Frequency2D&) const = default;
};

/// The analytic half-plane {x > 0} U {x = 0, y >= 0} on which mode spectra and
/// center frequencies live.
bool in_analytic_half_plane(Frequency2D f) noexcept;
Frequency2D fold_to_half_plane(Frequency2D f) noexcept;

enum class InitScheme {
  fixed,   // w_0 = (0,0); for K = 2, w_1 = (0.25, 0.25)
  random,  // seeded, uniform over the half-plane
};

struct VmdParams {
  int modes = 2;
  double alpha = 5000.0;  // bandwidth penalty
  double tau = 0.0;       // multiplier step; 0 relaxes exact reconstruction
  double epsilon = 1e-6;
  int max_iterations = 300;
  InitScheme init = InitScheme::fixed;
  std::uint64_t seed = 0;

  /// Throws Error{config, "BadParams"}.
  void validate() const;
};

struct Mode2D {
  Grid spatial;
  Frequency2D center_frequency;
};

struct VmdDiagnostics {
  int iterations = 0;
  bool converged = false;
  double final_change = 0.0;
  /// ||image - sum(modes)|| / ||image|| (absolute norm when the image is zero).
  double residual = 0.0;
  double residual_norm = 0.0;
  /// Convergence criterion after each iteration.
  std::vector<double> change_history;
};

struct VmdResult {
  std::vector<Mode2D> modes;
  VmdDiagnostics diagnostics;
};

/// Two-dimensional VMD by ADMM in the spectral domain.
///
/// Each sweep updates, in mode order and using already-updated modes,
///   p_k <- (n - sum_{j != k} p_j + mu/2) / (1 + 2 alpha |w - w_k|^2)
/// restricted to the analytic half-plane and mirrored to keep p_k real, then
/// moves w_k to the spectral center of gravity of p_k. The multiplier takes a
/// step tau along the reconstruction residual. Iteration stops once
/// sum_k ||p_k' - p_k||^2 / ||p_k||^2 < epsilon or max_iterations is reached.
///
/// Throws Error{numerical, "NonFinite"} if an iterate overflows.
VmdResult vmd2d(const Grid& image, const VmdParams& params);

inline VmdResult vmd2d(const GrayImage& image, const VmdParams& params) {
  return vmd2d(image.grid(), params);
}

}  // namespace vmdtex::vmd
