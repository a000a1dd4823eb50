#include "vmdtex/selection/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "vmdtex/error.hpp"

namespace vmdtex::selection {

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> data,
                             std::vector<std::string> names, std::vector<int> labels)
    : rows_(rows), cols_(cols), data_(std::move(data)), names_(std::move(names)), labels_(std::move(labels)) {
  if (data_.size() != rows_ * cols_ || names_.size() != cols_ || labels_.size() != rows_) {
    throw data_error("BadMatrix", "feature matrix dimensions are inconsistent");
  }
  if (std::set<std::string>(names_.begin(), names_.end()).size() != names_.size()) {
    throw data_error("BadMatrix", "duplicate feature names");
  }
  if (!std::ranges::all_of(data_, [](double v) { return std::isfinite(v); })) {
    throw data_error("BadMatrix", "feature matrix contains NaN/Inf");
  }
  if (!std::ranges::all_of(labels_, [](int y) { return y == 1 || y == -1; })) {
    throw data_error("BadMatrix", "labels must be +1 or -1");
  }
}

std::vector<ColumnStats> FeatureMatrix::column_stats() const {
  std::vector<ColumnStats> stats(cols_);
  if (rows_ == 0) return stats;
  for (std::size_t j = 0; j < cols_; ++j) {
    double sum = 0.0, lo = at(0, j), hi = at(0, j);
    for (std::size_t i = 0; i < rows_; ++i) {
      const double v = at(i, j);
      sum += v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double mean = sum / static_cast<double>(rows_);
    double ss = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) ss += (at(i, j) - mean) * (at(i, j) - mean);
    stats[j] = {mean, std::sqrt(ss / static_cast<double>(rows_)), lo, hi};
  }
  return stats;
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> indices) const {
  std::vector<double> data;
  data.reserve(indices.size() * cols_);
  std::vector<int> labels;
  labels.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= rows_) throw data_error("BadMatrix", "row index out of range");
    const auto r = row(i);
    data.insert(data.end(), r.begin(), r.end());
    labels.push_back(labels_[i]);
  }
  return FeatureMatrix(indices.size(), cols_, std::move(data), names_, std::move(labels));
}

FeatureMatrix FeatureMatrix::select_columns(const std::vector<bool>& mask) const {
  if (mask.size() != cols_) throw data_error("BadMatrix", "column mask width mismatch");
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < cols_; ++j)
    if (mask[j]) keep.push_back(j);
  std::vector<double> data;
  data.reserve(rows_ * keep.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j : keep) data.push_back(at(i, j));
  std::vector<std::string> names;
  for (std::size_t j : keep) names.push_back(names_[j]);
  return FeatureMatrix(rows_, keep.size(), std::move(data), std::move(names), labels_);
}

}  // namespace vmdtex::selection
