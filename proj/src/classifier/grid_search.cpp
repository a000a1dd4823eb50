#include "vmdtex/classifier/grid_search.hpp"

#include <algorithm>
#include <cmath>

#include "kkt.hpp"
#include "vmdtex/classifier/lssvm.hpp"
#include "vmdtex/error.hpp"
#include "vmdtex/util/parallel.hpp"
#include "vmdtex/util/random.hpp"

namespace vmdtex::classifier {

void GridParams::validate() const {
  if (gammas.empty() || sigmas.empty()) throw config_error("BadParams", "hyperparameter grids must be non-empty");
  if (inner_folds < 2) throw config_error("BadParams", "inner_folds must be >= 2");
  for (double g : gammas)
    if (!(g > 0.0)) throw config_error("BadParams", "gamma values must be > 0");
  for (double s : sigmas)
    if (!(s > 0.0)) throw config_error("BadParams", "sigma values must be > 0");
}

std::vector<std::size_t> stratified_row_folds(const std::vector<int>& labels, std::size_t folds,
                                              std::uint64_t seed) {
  util::Rng rng(seed);
  std::vector<std::size_t> assignment(labels.size(), 0);
  std::size_t next = 0;
  for (int cls : {-1, 1}) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == cls) rows.push_back(i);
    rng.shuffle(rows);
    for (std::size_t r : rows) assignment[r] = next++ % folds;
  }
  return assignment;
}

namespace {

struct FoldData {
  std::vector<std::size_t> train, test;
  std::vector<int> train_labels;
  std::vector<double> train_dist;  // squared distances among training rows
};

}  // namespace

GridResult grid_search(const selection::FeatureMatrix& train, const GridParams& params) {
  params.validate();
  const std::size_t n = train.rows();
  const std::size_t dim = train.cols();
  const auto& labels = train.labels();
  const auto dist = detail::pairwise_squared_distances(train.data(), dim);
  const auto assignment = stratified_row_folds(labels, params.inner_folds, params.seed);

  std::vector<FoldData> folds(params.inner_folds);
  for (std::size_t i = 0; i < n; ++i) {
    auto& f = folds[assignment[i]];
    f.test.push_back(i);
    for (std::size_t k = 0; k < folds.size(); ++k) {
      if (k != assignment[i]) {
        folds[k].train.push_back(i);
        folds[k].train_labels.push_back(labels[i]);
      }
    }
  }
  for (auto& f : folds) {
    const std::size_t m = f.train.size();
    f.train_dist.resize(m * m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) f.train_dist[a * m + b] = dist[f.train[a] * n + f.train[b]];
  }

  GridResult result;
  for (double g : params.gammas)
    for (double s : params.sigmas) result.table.push_back({g, s, std::nullopt, {}});

  util::parallel_for(result.table.size(), util::resolve_jobs(params.jobs), [&](std::size_t c) {
    GridCell& cell = result.table[c];
    double acc_sum = 0.0;
    std::size_t used = 0;
    try {
      for (const auto& f : folds) {
        if (f.test.empty()) continue;
        const bool both = std::ranges::find(f.train_labels, 1) != f.train_labels.end() &&
                          std::ranges::find(f.train_labels, -1) != f.train_labels.end();
        if (!both) throw data_error("SingleClass", "inner fold training set has one class");
        const auto sol = detail::solve_kkt(f.train_dist, f.train_labels, cell.gamma, cell.sigma);
        const double inv2s2 = 1.0 / (2.0 * cell.sigma * cell.sigma);
        std::size_t correct = 0;
        for (std::size_t t : f.test) {
          double score = sol.bias;
          for (std::size_t a = 0; a < f.train.size(); ++a) {
            score += sol.alphas[a] * f.train_labels[a] * std::exp(-dist[f.train[a] * n + t] * inv2s2);
          }
          if ((score >= 0.0 ? 1 : -1) == labels[t]) ++correct;
        }
        acc_sum += static_cast<double>(correct) / static_cast<double>(f.test.size());
        ++used;
      }
      cell.accuracy = acc_sum / static_cast<double>(used);
    } catch (const Error& e) {
      cell.failure = e.kind() + ": " + e.what();
    }
  });

  const GridCell* best = nullptr;
  for (const auto& cell : result.table) {
    if (!cell.accuracy) continue;
    if (best == nullptr || *cell.accuracy > *best->accuracy ||
        (*cell.accuracy == *best->accuracy &&
         (cell.gamma < best->gamma || (cell.gamma == best->gamma && cell.sigma < best->sigma)))) {
      best = &cell;
    }
  }
  if (best == nullptr) throw numerical_error("GridSearchFailed", "every grid cell failed to train");
  result.gamma = best->gamma;
  result.sigma = best->sigma;
  result.accuracy = *best->accuracy;
  return result;
}

}  // namespace vmdtex::classifier
