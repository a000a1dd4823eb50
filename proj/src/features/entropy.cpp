#include "vmdtex/features/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "vmdtex/error.hpp"

namespace vmdtex::features {

Histogram Histogram::from_probabilities(std::vector<double> probabilities, std::size_t source_pixels) {
  if (probabilities.empty()) throw data_error("BadHistogram", "histogram has no bins");
  double total = 0.0;
  for (double q : probabilities) {
    if (!(q >= 0.0) || !std::isfinite(q)) throw data_error("BadHistogram", "negative or non-finite bin");
    total += q;
  }
  if (std::fabs(total - 1.0) > 1e-12) throw data_error("BadHistogram", "bins do not sum to 1");
  Histogram h;
  h.q_ = std::move(probabilities);
  h.pixels_ = source_pixels;
  return h;
}

Histogram intensity_histogram(const Grid& mode) {
  const auto values = mode.values();
  if (values.empty()) throw data_error("BadHistogram", "empty mode");
  const auto [lo_it, hi_it] = std::ranges::minmax_element(values);
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double range = hi - lo;
  const bool constant = range <= 1e-12 * std::max(std::fabs(lo), std::fabs(hi));

  std::vector<std::size_t> counts(kHistogramBins, 0);
  for (double v : values) {
    std::size_t bin = 0;
    if (!constant) {
      const double scaled = std::floor((v - lo) / range * static_cast<double>(kHistogramBins));
      bin = static_cast<std::size_t>(std::clamp(scaled, 0.0, static_cast<double>(kHistogramBins - 1)));
    }
    ++counts[bin];
  }
  std::vector<double> q(kHistogramBins);
  const double n = static_cast<double>(values.size());
  for (std::size_t m = 0; m < kHistogramBins; ++m) q[m] = static_cast<double>(counts[m]) / n;
  return Histogram::from_probabilities(std::move(q), values.size());
}

namespace {

double power_sum(const Histogram& hist, double a) {
  double total = 0.0;
  for (double q : hist.probabilities())
    if (q > 0.0) total += std::pow(q, a);
  return total;
}

}  // namespace

double renyi_entropy(const Histogram& hist, double a) {
  if (!(a > 0.0) || a == 1.0) throw config_error("BadOrder", "Renyi order must be > 0 and != 1");
  return 0.0 + std::log2(power_sum(hist, a)) / (1.0 - a);
}

double kapur_entropy(const Histogram& hist, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || a == b) {
    throw config_error("BadOrder", "Kapur orders must be > 0 and distinct");
  }
  return 0.0 + std::log2(power_sum(hist, a) / power_sum(hist, b)) / (b - a);
}

double yager_entropy(const Histogram& hist, YagerDenominator denominator) {
  double total = 0.0;
  for (double q : hist.probabilities()) total += std::fabs(2.0 * q - 1.0);
  const double d = denominator == YagerDenominator::bins ? static_cast<double>(hist.bins())
                                                         : static_cast<double>(hist.source_pixels());
  if (!(d > 0.0)) throw data_error("BadHistogram", "Yager denominator is zero");
  return 1.0 - total / d;
}

}  // namespace vmdtex::features
