#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "vmdtex/dataset/image.hpp"
#include "vmdtex/pipeline/config.hpp"

namespace vmdtex::pipeline {

/// Procedural two-class texture. Benign images are dominated by a coarse
/// grating (3-5 cycles per image side), malignant ones by a fine grating
/// (12-16 cycles); orientation, phase, contrast and noise vary per image.
Grid synthetic_texture(bool malignant, std::size_t side, std::uint64_t seed);

/// Writes the fixture as RGB PNGs under root/{benign,malignant}/ with
/// BreakHis-style names. Deterministic per seed. Returns the written paths.
std::vector<std::filesystem::path> generate_synthetic(const std::filesystem::path& root,
                                                      const SyntheticSpec& spec, std::uint64_t seed);

}  // namespace vmdtex::pipeline
