#pragma once

#include <functional>
#include <vector>

#include "vmdtex/vmd/vmd.hpp"

namespace vmdtex::vmd {

/// Below this input energy a level is not decomposed.
inline constexpr double kDegenerateEnergy = 1e-12;

struct TreeLevel {
  Mode2D low;
  Mode2D high;
  VmdDiagnostics diagnostics;
  /// Level input had energy below kDegenerateEnergy; both modes are zero grids.
  bool degenerate = false;
};

/// Repeated two-mode decomposition: level l + 1 decomposes the high mode of level l.
struct DecompositionTree {
  std::vector<TreeLevel> levels;
  /// Set when some level was degenerate; that level and all later ones hold zero modes.
  bool truncated = false;

  std::size_t component_count() const noexcept { return 2 * levels.size(); }

  /// Flattened as (L1-low, L1-high, L2-low, L2-high, ...).
  std::vector<std::reference_wrapper<const Mode2D>> components() const;
};

/// Builds `levels` levels of two-mode VMD. `params.modes` must be 2.
/// Throws Error{config, "BadParams"} and propagates vmd2d errors.
DecompositionTree iterative_vmd(const Grid& image, int levels, const VmdParams& params);

inline DecompositionTree iterative_vmd(const GrayImage& image, int levels, const VmdParams& params) {
  return iterative_vmd(image.grid(), levels, params);
}

}  // namespace vmdtex::vmd
