#pragma once

#include <string>
#include <vector>

#include "vmdtex/dataset/sample.hpp"

namespace vmdtex::features {

struct FeatureRow {
  std::string sample_id;
  std::string patient_id;
  int magnification = 0;
  dataset::ClassLabel label = dataset::ClassLabel::benign;
  std::vector<double> values;
};

/// Per-sample feature vectors sharing one column naming.
struct FeatureTable {
  std::vector<std::string> names;
  std::vector<FeatureRow> rows;
};

/// CSV with header `sample_id,patient_id,magnification,label,<names...>`;
/// values use 9 significant digits.
std::string feature_table_to_csv(const FeatureTable& table);

/// Throws Error{data, "BadFeatureFile"}.
FeatureTable feature_table_from_csv(const std::string& csv);

}  // namespace vmdtex::features
