#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vmdtex/vmd/tree.hpp"

namespace vmdtex::vmd {

/// Raw little-endian float32, row-major.
std::vector<std::byte> encode_float32_le(const Grid& grid);
Grid decode_float32_le(std::size_t width, std::size_t height, const std::vector<std::byte>& bytes);

/// File stem of a component, e.g. "comp3hi" for the high mode of level 3.
std::string component_stem(std::size_t level_one_based, bool high);

/// Writes `<dir>/compNlo.f32` + `.json` sidecar for every component. The sidecar
/// holds {width, height, level, which, center_frequency, residual[, seed]}.
/// Returns the written paths (data and sidecar interleaved).
std::vector<std::filesystem::path> write_component_dump(const std::filesystem::path& dir,
                                                        const DecompositionTree& tree,
                                                        std::optional<std::uint64_t> seed = {});

}  // namespace vmdtex::vmd
