#include "vmdtex/pipeline/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "vmdtex/util/random.hpp"

namespace vmdtex::pipeline {

namespace fs = std::filesystem;

Grid synthetic_texture(bool malignant, std::size_t side, std::uint64_t seed) {
  util::Rng rng(seed);
  const double cycles = malignant ? rng.uniform(12.0, 16.0) : rng.uniform(3.0, 5.0);
  const double theta = rng.uniform(0.0, std::numbers::pi);
  const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double contrast = rng.uniform(0.22, 0.32);
  const double level = rng.uniform(0.45, 0.55);
  const double noise = rng.uniform(0.02, 0.05);
  const double kx = cycles * std::cos(theta) / static_cast<double>(side);
  const double ky = cycles * std::sin(theta) / static_cast<double>(side);

  std::vector<double> v(side * side);
  for (std::size_t y = 0; y < side; ++y) {
    for (std::size_t x = 0; x < side; ++x) {
      const double arg = 2.0 * std::numbers::pi * (kx * static_cast<double>(x) + ky * static_cast<double>(y)) + phase;
      v[y * side + x] = std::clamp(level + contrast * std::cos(arg) + noise * rng.normal(), 0.0, 1.0);
    }
  }
  return Grid(side, side, std::move(v));
}

std::vector<fs::path> generate_synthetic(const fs::path& root, const SyntheticSpec& spec, std::uint64_t seed) {
  std::vector<fs::path> written;
  const std::size_t side = spec.image_side;
  std::vector<unsigned char> rgb(side * side * 3);
  std::uint64_t stream = 0;
  for (bool malignant : {false, true}) {
    for (std::size_t p = 0; p < spec.patients_per_class; ++p) {
      const int slide = (malignant ? 3000 : 2000) + static_cast<int>(p);
      for (std::size_t s = 1; s <= spec.images_per_patient; ++s) {
        const Grid g = synthetic_texture(malignant, side, util::derive_seed(seed, stream++));
        for (std::size_t i = 0; i < side * side; ++i) {
          const double v = g.values()[i];
          rgb[3 * i + 0] = static_cast<unsigned char>(std::lround(255.0 * std::min(1.0, 0.8 * v + 0.15)));
          rgb[3 * i + 1] = static_cast<unsigned char>(std::lround(255.0 * v));
          rgb[3 * i + 2] = static_cast<unsigned char>(std::lround(255.0 * std::min(1.0, 0.9 * v + 0.08)));
        }
        char name[96];
        std::snprintf(name, sizeof name, "SOB_%s-14-%d-%d-%03zu.png", malignant ? "M_DC" : "B_A", slide,
                      spec.magnification, s);
        const fs::path path = root / (malignant ? "malignant" : "benign") / name;
        write_rgb_png(path, side, side, rgb);
        written.push_back(path);
      }
    }
  }
  return written;
}

}  // namespace vmdtex::pipeline
