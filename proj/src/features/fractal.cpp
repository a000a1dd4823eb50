#include "vmdtex/features/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vmdtex/error.hpp"

namespace vmdtex::features {

double fractal_dimension(const Grid& surface) {
  const std::size_t n = surface.width();
  if (surface.height() != n) throw data_error("DegenerateImage", "box counting needs a square grid");
  if (n < 8) throw data_error("DegenerateImage", "box counting needs N >= 8");

  const auto values = surface.values();
  const auto [lo_it, hi_it] = std::ranges::minmax_element(values);
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  const bool constant = range <= 1e-12 * std::max(std::fabs(lo), std::fabs(*hi_it));
  std::vector<double> g(values.size(), 0.0);
  if (!constant)
    for (std::size_t i = 0; i < values.size(); ++i) g[i] = (values[i] - lo) / range * 255.0;

  // log2 keeps the dyadic abscissae exact, so a flat surface regresses to exactly 2.
  std::vector<double> xs, ys;
  const double nd = static_cast<double>(n);
  for (std::size_t s = 2; s <= n / 2; s *= 2) {
    const double h = static_cast<double>(s) * 256.0 / nd;
    double boxes = 0.0;
    for (std::size_t by = 0; by < n; by += s) {
      for (std::size_t bx = 0; bx < n; bx += s) {
        double bmin = g[by * n + bx];
        double bmax = bmin;
        for (std::size_t y = by; y < std::min(by + s, n); ++y) {
          for (std::size_t x = bx; x < std::min(bx + s, n); ++x) {
            const double v = g[y * n + x];
            bmin = std::min(bmin, v);
            bmax = std::max(bmax, v);
          }
        }
        boxes += std::ceil(bmax / h) - std::ceil(bmin / h) + 1.0;
      }
    }
    xs.push_back(std::log2(nd / static_cast<double>(s)));
    ys.push_back(std::log2(boxes));
  }

  const double count = static_cast<double>(xs.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= count;
  mean_y /= count;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
    sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
  }
  return sxy / sxx;
}

}  // namespace vmdtex::features
