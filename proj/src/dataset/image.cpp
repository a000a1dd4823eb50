#include "vmdtex/dataset/image.hpp"

#include <cmath>
#include <string>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "vmdtex/error.hpp"
#include "vmdtex/util/atomic_file.hpp"

namespace vmdtex {

Grid::Grid(std::size_t width, std::size_t height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  if (values_.size() != width_ * height_) {
    throw data_error("ShapeMismatch", "grid value count does not match its dimensions");
  }
}

double Grid::energy() const noexcept {
  double total = 0.0;
  for (double v : values_) total += v * v;
  return total;
}

GrayImage::GrayImage(Grid grid) : grid_(std::move(grid)) {
  if (grid_.width() < 2 || grid_.height() < 2) {
    throw data_error("InvalidImage", "image must be at least 2x2");
  }
  for (double v : grid_.values()) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw data_error("InvalidImage", "pixel outside [0,1] or non-finite");
    }
  }
}

GrayImage load_green_channel(const std::filesystem::path& path, ChannelMode mode) {
  cv::Mat raw;
  try {
    raw = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  } catch (const cv::Exception& e) {
    throw data_error("DecodeError", path.string() + ": " + e.what());
  }
  if (raw.empty()) throw data_error("DecodeError", "cannot decode " + path.string());
  if (raw.depth() != CV_8U) {
    throw data_error("DecodeError", path.string() + ": only 8-bit rasters are supported");
  }
  const int channels = raw.channels();
  if (channels != 1 && channels != 3 && channels != 4) {
    throw data_error("DecodeError", path.string() + ": unsupported channel count");
  }

  const auto width = static_cast<std::size_t>(raw.cols);
  const auto height = static_cast<std::size_t>(raw.rows);
  Grid grid(width, height);
  for (int y = 0; y < raw.rows; ++y) {
    const unsigned char* row = raw.ptr<unsigned char>(y);
    for (int x = 0; x < raw.cols; ++x) {
      const unsigned char* px = row + static_cast<std::size_t>(x) * channels;
      double value;
      if (channels == 1) {
        value = px[0];
      } else if (mode == ChannelMode::green) {
        value = px[1];  // OpenCV order is B, G, R(, A)
      } else {
        value = 0.299 * px[2] + 0.587 * px[1] + 0.114 * px[0];
      }
      grid.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = value / 255.0;
    }
  }
  return GrayImage(std::move(grid));
}

void write_rgb_png(const std::filesystem::path& path, std::size_t width, std::size_t height,
                   std::span<const unsigned char> rgb) {
  if (rgb.size() != width * height * 3) {
    throw data_error("ShapeMismatch", "RGB buffer size does not match dimensions");
  }
  cv::Mat bgr(static_cast<int>(height), static_cast<int>(width), CV_8UC3);
  for (std::size_t y = 0; y < height; ++y) {
    auto* row = bgr.ptr<unsigned char>(static_cast<int>(y));
    for (std::size_t x = 0; x < width; ++x) {
      const unsigned char* src = rgb.data() + (y * width + x) * 3;
      row[3 * x + 0] = src[2];
      row[3 * x + 1] = src[1];
      row[3 * x + 2] = src[0];
    }
  }
  std::vector<unsigned char> encoded;
  if (!cv::imencode(".png", bgr, encoded)) {
    throw data_error("WriteError", "PNG encoding failed for " + path.string());
  }
  util::write_file_atomic(path, std::as_bytes(std::span(encoded)));
}

}  // namespace vmdtex
