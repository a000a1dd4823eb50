#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace vmdtex {

/// Row-major real-valued 2D grid. Used for images, modes and resampled features.
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t width, std::size_t height, double fill = 0.0)
      : width_(width), height_(height), values_(width * height, fill) {}
  Grid(std::size_t width, std::size_t height, std::vector<double> values);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return values_.size(); }

  double& at(std::size_t x, std::size_t y) { return values_[y * width_ + x]; }
  double at(std::size_t x, std::size_t y) const { return values_[y * width_ + x]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Sum of squared values.
  double energy() const noexcept;

  bool operator==(const Grid&) const = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> values_;
};

/// Pipeline input: at least 2x2, every pixel finite and within [0, 1].
class GrayImage {
 public:
  /// Throws Error{data, "InvalidImage"} if the invariants do not hold.
  explicit GrayImage(Grid grid);

  std::size_t width() const noexcept { return grid_.width(); }
  std::size_t height() const noexcept { return grid_.height(); }
  const Grid& grid() const noexcept { return grid_; }

 private:
  Grid grid_;
};

enum class ChannelMode { green, luminance };

/// Decodes an 8-bit raster and returns its green channel scaled by 1/255
/// (or Rec.601 luminance). Single-channel inputs pass through scaled.
/// Throws Error{data, "DecodeError"}.
GrayImage load_green_channel(const std::filesystem::path& path,
                             ChannelMode mode = ChannelMode::green);

/// Writes an 8-bit RGB PNG. Used by the synthetic fixture generator.
void write_rgb_png(const std::filesystem::path& path, std::size_t width, std::size_t height,
                   std::span<const unsigned char> rgb);

}  // namespace vmdtex
