#include "vmdtex/selection/relieff.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vmdtex/error.hpp"
#include "vmdtex/simd/kernels.hpp"
#include "vmdtex/util/parallel.hpp"
#include "vmdtex/util/random.hpp"

namespace vmdtex::selection {

std::size_t RankedFeatures::selected_count() const {
  return static_cast<std::size_t>(std::ranges::count(selected_mask, true));
}

std::vector<std::size_t> rank_order(const std::vector<double>& weights) {
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });
  return order;
}

namespace {

struct Neighbour {
  double distance;
  std::size_t row;
  bool operator<(const Neighbour& o) const {
    return distance < o.distance || (distance == o.distance && row < o.row);
  }
};

}  // namespace

RankedFeatures relieff(const FeatureMatrix& matrix, const ReliefParams& params) {
  const std::size_t m = matrix.rows();
  const std::size_t d = matrix.cols();
  const auto& labels = matrix.labels();
  const auto positives = static_cast<std::size_t>(std::ranges::count(labels, 1));
  if (positives == 0 || positives == m) throw data_error("SingleClass", "ReliefF needs both classes");
  const std::size_t smallest = std::min(positives, m - positives);
  const std::size_t k = params.k_neighbors;
  if (k < 1 || k >= smallest) {
    throw config_error("BadK", "k_neighbors must be >= 1 and < smallest class size (" +
                                   std::to_string(smallest) + ")");
  }

  // Range-scaled copy.
  const auto stats = matrix.column_stats();
  std::vector<double> scaled(m * d);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double range = stats[j].max - stats[j].min;
      scaled[i * d + j] = range > 0.0 ? (matrix.at(i, j) - stats[j].min) / range : 0.0;
    }
  }

  std::vector<std::size_t> refs(m);
  std::iota(refs.begin(), refs.end(), std::size_t{0});
  if (params.samples > 0 && params.samples < m) {
    util::Rng rng(params.seed);
    rng.shuffle(refs);
    refs.resize(params.samples);
    std::ranges::sort(refs);
  }
  const std::size_t visits = refs.size();

  const auto& kern = simd::kernels();
  // Per-instance contribution (mean miss diff - mean hit diff), reduced in row order afterwards.
  std::vector<double> contrib(visits * d, 0.0);
  util::parallel_for(visits, util::resolve_jobs(params.jobs), [&](std::size_t v) {
    const std::size_t i = refs[v];
    const double* xi = scaled.data() + i * d;
    std::vector<Neighbour> hits, misses;
    hits.reserve(m);
    misses.reserve(m);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == i) continue;
      const Neighbour n{kern.l1_distance(xi, scaled.data() + r * d, d), r};
      (labels[r] == labels[i] ? hits : misses).push_back(n);
    }
    std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(k), hits.end());
    std::partial_sort(misses.begin(), misses.begin() + static_cast<std::ptrdiff_t>(k), misses.end());
    double* out = contrib.data() + v * d;
    const double scale = 1.0 / static_cast<double>(k);
    for (std::size_t n = 0; n < k; ++n) {
      const double* h = scaled.data() + hits[n].row * d;
      const double* s = scaled.data() + misses[n].row * d;
      for (std::size_t j = 0; j < d; ++j) {
        out[j] += scale * (std::abs(xi[j] - s[j]) - std::abs(xi[j] - h[j]));
      }
    }
  });

  RankedFeatures ranked;
  ranked.weights.assign(d, 0.0);
  for (std::size_t v = 0; v < visits; ++v)
    for (std::size_t j = 0; j < d; ++j) ranked.weights[j] += contrib[v * d + j];
  for (double& w : ranked.weights) w = 0.0 + w / static_cast<double>(visits);
  ranked.order = rank_order(ranked.weights);
  ranked.selected_mask.resize(d);
  for (std::size_t j = 0; j < d; ++j) ranked.selected_mask[j] = ranked.weights[j] > 0.0;
  return ranked;
}

}  // namespace vmdtex::selection
