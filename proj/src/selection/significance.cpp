#include "vmdtex/selection/significance.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>

#include "vmdtex/error.hpp"

namespace vmdtex::selection {

namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;  // unbiased
  double n = 0.0;
};

Moments moments(std::span<const double> xs) {
  Moments m;
  m.n = static_cast<double>(xs.size());
  if (xs.empty()) return m;
  for (double x : xs) m.mean += x;
  m.mean /= m.n;
  if (xs.size() > 1) {
    for (double x : xs) m.var += (x - m.mean) * (x - m.mean);
    m.var /= m.n - 1.0;
  }
  return m;
}

}  // namespace

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) return {};
  const Moments ma = moments(a), mb = moments(b);
  const double sa = ma.var / ma.n, sb = mb.var / mb.n;
  const double se2 = sa + sb;
  const double diff = ma.mean - mb.mean;
  if (!(se2 > 0.0)) {
    if (diff == 0.0) return {};
    return {diff > 0 ? INFINITY : -INFINITY, ma.n + mb.n - 2.0, 0.0};
  }
  WelchResult r;
  r.t = diff / std::sqrt(se2);
  r.df = se2 * se2 / (sa * sa / (ma.n - 1.0) + sb * sb / (mb.n - 1.0));
  const boost::math::students_t dist(r.df);
  r.p = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t))));
  return r;
}

RankedFeatures significance_filter(const FeatureMatrix& matrix, RankedFeatures ranked,
                                   const SignificanceParams& params) {
  const std::size_t d = matrix.cols();
  if (ranked.weights.size() != d) throw data_error("BadMatrix", "ranking width does not match matrix");
  ranked.p_values.assign(d, 1.0);
  ranked.selected_mask.assign(d, false);
  std::vector<double> pos, neg;
  for (std::size_t j = 0; j < d; ++j) {
    pos.clear();
    neg.clear();
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
      (matrix.labels()[i] > 0 ? pos : neg).push_back(matrix.at(i, j));
    }
    ranked.p_values[j] = welch_t_test(pos, neg).p;
    ranked.selected_mask[j] = ranked.p_values[j] < params.p_threshold && ranked.weights[j] > 0.0;
  }
  ranked.fallback = ranked.selected_count() == 0;
  if (ranked.fallback) {
    const std::size_t keep = std::min(params.fallback_count, d);
    for (std::size_t r = 0; r < keep; ++r) ranked.selected_mask[ranked.order[r]] = true;
  }
  return ranked;
}

nlohmann::ordered_json selection_report(const RankedFeatures& ranked,
                                        const std::vector<std::string>& names) {
  nlohmann::ordered_json j;
  j["weights"] = ranked.weights;
  auto selected = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < names.size() && c < ranked.selected_mask.size(); ++c)
    if (ranked.selected_mask[c]) selected.push_back(names[c]);
  j["selected"] = std::move(selected);
  j["p_values"] = ranked.p_values;
  j["fallback"] = ranked.fallback;
  return j;
}

}  // namespace vmdtex::selection
