#pragma once

#include "vmdtex/dataset/image.hpp"

namespace vmdtex::features {

/// Bilinear resampling onto a side x side grid (pixel-center aligned, edge clamped).
Grid resample_bilinear(const Grid& source, std::size_t side);

}  // namespace vmdtex::features
