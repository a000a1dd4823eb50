#include "vmdtex/selection/zscore.hpp"

#include "vmdtex/error.hpp"

namespace vmdtex::selection {

ZScoreStats zscore_fit(const FeatureMatrix& train) {
  ZScoreStats stats;
  for (const auto& c : train.column_stats()) {
    stats.means.push_back(c.mean);
    stats.scales.push_back(c.stddev < ZScoreStats::kMinScale ? 1.0 : c.stddev);
  }
  return stats;
}

std::vector<double> zscore_apply(const ZScoreStats& stats, std::span<const double> row) {
  if (row.size() != stats.means.size()) throw data_error("DimensionMismatch", "z-score width mismatch");
  std::vector<double> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) out[j] = (row[j] - stats.means[j]) / stats.scales[j];
  return out;
}

FeatureMatrix zscore_apply(const ZScoreStats& stats, const FeatureMatrix& matrix) {
  std::vector<double> data;
  data.reserve(matrix.rows() * matrix.cols());
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    const auto r = zscore_apply(stats, matrix.row(i));
    data.insert(data.end(), r.begin(), r.end());
  }
  return FeatureMatrix(matrix.rows(), matrix.cols(), std::move(data), matrix.names(), matrix.labels());
}

}  // namespace vmdtex::selection
