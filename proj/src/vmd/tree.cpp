#include "vmdtex/vmd/tree.hpp"

#include "vmdtex/error.hpp"

namespace vmdtex::vmd {

std::vector<std::reference_wrapper<const Mode2D>> DecompositionTree::components() const {
  std::vector<std::reference_wrapper<const Mode2D>> flat;
  flat.reserve(component_count());
  for (const auto& level : levels) {
    flat.emplace_back(level.low);
    flat.emplace_back(level.high);
  }
  return flat;
}

DecompositionTree iterative_vmd(const Grid& image, int levels, const VmdParams& params) {
  if (levels < 1) throw config_error("BadParams", "iterative VMD needs at least one level");
  if (params.modes != 2) throw config_error("BadParams", "iterative VMD uses exactly two modes per level");
  params.validate();

  DecompositionTree tree;
  tree.levels.reserve(static_cast<std::size_t>(levels));
  Grid input = image;
  for (int l = 0; l < levels; ++l) {
    TreeLevel level;
    if (tree.truncated || input.energy() < kDegenerateEnergy) {
      tree.truncated = true;
      level.degenerate = true;
      level.low.spatial = Grid(image.width(), image.height());
      level.high.spatial = Grid(image.width(), image.height());
      tree.levels.push_back(std::move(level));
      continue;
    }
    VmdResult result = vmd2d(input, params);
    // Larger |w| is the high band; on a tie the later mode is.
    const bool swap = result.modes[0].center_frequency.norm() > result.modes[1].center_frequency.norm();
    level.low = std::move(result.modes[swap ? 1 : 0]);
    level.high = std::move(result.modes[swap ? 0 : 1]);
    level.diagnostics = std::move(result.diagnostics);
    input = level.high.spatial;
    tree.levels.push_back(std::move(level));
  }
  return tree;
}

}  // namespace vmdtex::vmd
