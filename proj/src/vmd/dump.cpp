#include "vmdtex/vmd/dump.hpp"

#include <bit>
#include <cstring>

#include <nlohmann/json.hpp>

#include "vmdtex/error.hpp"
#include "vmdtex/util/atomic_file.hpp"

namespace vmdtex::vmd {

std::vector<std::byte> encode_float32_le(const Grid& grid) {
  std::vector<std::byte> bytes;
  bytes.reserve(grid.size() * 4);
  for (double v : grid.values()) {
    const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
    for (int shift = 0; shift < 32; shift += 8) bytes.push_back(static_cast<std::byte>((bits >> shift) & 0xFFu));
  }
  return bytes;
}

Grid decode_float32_le(std::size_t width, std::size_t height, const std::vector<std::byte>& bytes) {
  if (bytes.size() != width * height * 4) throw data_error("BadComponent", "component size mismatch");
  Grid grid(width, height);
  auto values = grid.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::uint32_t bits = 0;
    for (int b = 0; b < 4; ++b) bits |= std::to_integer<std::uint32_t>(bytes[4 * i + b]) << (8 * b);
    values[i] = std::bit_cast<float>(bits);
  }
  return grid;
}

std::string component_stem(std::size_t level, bool high) {
  return "comp" + std::to_string(level) + (high ? "hi" : "lo");
}

std::vector<std::filesystem::path> write_component_dump(const std::filesystem::path& dir,
                                                        const DecompositionTree& tree,
                                                        std::optional<std::uint64_t> seed) {
  std::vector<std::filesystem::path> written;
  for (std::size_t l = 0; l < tree.levels.size(); ++l) {
    const TreeLevel& level = tree.levels[l];
    for (bool high : {false, true}) {
      const Mode2D& mode = high ? level.high : level.low;
      const std::string stem = component_stem(l + 1, high);
      const auto data_path = dir / (stem + ".f32");
      const auto meta_path = dir / (stem + ".json");
      util::write_file_atomic(data_path, encode_float32_le(mode.spatial));

      nlohmann::ordered_json meta;
      meta["width"] = mode.spatial.width();
      meta["height"] = mode.spatial.height();
      meta["level"] = l + 1;
      meta["which"] = high ? "high" : "low";
      meta["center_frequency"] = {mode.center_frequency.x, mode.center_frequency.y};
      meta["residual"] = level.diagnostics.residual;
      if (level.degenerate) meta["degenerate"] = true;
      if (seed) meta["seed"] = *seed;
      util::write_file_atomic(meta_path, meta.dump(2) + "\n");
      written.push_back(data_path);
      written.push_back(meta_path);
    }
  }
  return written;
}

}  // namespace vmdtex::vmd
