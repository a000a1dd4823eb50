#include "vmdtex/features/resample.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vmdtex/error.hpp"

namespace vmdtex::features {

namespace {

struct Tap {
  std::size_t i0, i1;
  double t;
};

std::vector<Tap> taps(std::size_t source, std::size_t target) {
  std::vector<Tap> out(target);
  const double scale = static_cast<double>(source) / static_cast<double>(target);
  const double last = static_cast<double>(source - 1);
  for (std::size_t d = 0; d < target; ++d) {
    const double pos = std::clamp((static_cast<double>(d) + 0.5) * scale - 0.5, 0.0, last);
    const auto i0 = static_cast<std::size_t>(std::floor(pos));
    const std::size_t i1 = std::min(i0 + 1, source - 1);
    out[d] = {i0, i1, pos - static_cast<double>(i0)};
  }
  return out;
}

}  // namespace

Grid resample_bilinear(const Grid& source, std::size_t side) {
  if (source.width() == 0 || source.height() == 0 || side == 0) {
    throw data_error("ShapeMismatch", "cannot resample an empty grid");
  }
  if (source.width() == side && source.height() == side) return source;
  const auto tx = taps(source.width(), side);
  const auto ty = taps(source.height(), side);
  Grid out(side, side);
  for (std::size_t y = 0; y < side; ++y) {
    for (std::size_t x = 0; x < side; ++x) {
      const double top = (1.0 - tx[x].t) * source.at(tx[x].i0, ty[y].i0) + tx[x].t * source.at(tx[x].i1, ty[y].i0);
      const double bottom = (1.0 - tx[x].t) * source.at(tx[x].i0, ty[y].i1) + tx[x].t * source.at(tx[x].i1, ty[y].i1);
      out.at(x, y) = (1.0 - ty[y].t) * top + ty[y].t * bottom;
    }
  }
  return out;
}

}  // namespace vmdtex::features
