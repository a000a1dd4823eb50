#pragma once

#include <span>
#include <string>
#include <vector>

namespace vmdtex::selection {

struct ColumnStats {
  double mean = 0.0;
  double stddev = 0.0;  // population
  double min = 0.0;
  double max = 0.0;
};

/// Dense row-major samples x features matrix with +1/-1 labels.
/// Entries are finite and column names unique (checked on construction,
/// Error{data, "BadMatrix"}).
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> data,
                std::vector<std::string> names, std::vector<int> labels);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  double at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const double> data() const noexcept { return data_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<int>& labels() const noexcept { return labels_; }

  std::vector<ColumnStats> column_stats() const;

  FeatureMatrix select_rows(std::span<const std::size_t> indices) const;
  FeatureMatrix select_columns(const std::vector<bool>& mask) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
  std::vector<std::string> names_;
  std::vector<int> labels_;
};

}  // namespace vmdtex::selection
