#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vmdtex/dataset/sample.hpp"
#include "vmdtex/features/entropy.hpp"
#include "vmdtex/features/zernike.hpp"
#include "vmdtex/vmd/tree.hpp"

namespace vmdtex::features {

struct EntropyOrders {
  double renyi = 2.0;
  double kapur_a = 0.5;
  double kapur_b = 2.0;
  YagerDenominator yager = YagerDenominator::bins;

  /// Throws Error{config, "BadOrder"}.
  void validate() const;
};

struct FeatureVector {
  std::vector<double> values;
  std::vector<std::string> names;
  std::optional<dataset::ClassLabel> label;
};

/// Per-mode descriptor names in emission order:
/// `comp{l}{lo|hi}/zern_p{p}_q{q}` for every moment, then `/KE`, `/RE`, `/YE`, `/FD`.
std::vector<std::string> feature_names(std::size_t levels, const ZernikeSpec& spec);

/// Extracts the textural signature of every tree component. Each mode is
/// bilinearly resampled to N x N, then Zernike magnitudes, Kapur, Renyi and
/// Yager entropies and the box-counting dimension are computed on it.
class FeatureExtractor {
 public:
  FeatureExtractor(const ZernikeSpec& zernike, const EntropyOrders& entropy, std::size_t levels = 5);

  std::size_t levels() const noexcept { return levels_; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  /// Throws Error{data, "BadTree"} if the tree does not have `levels` levels.
  FeatureVector operator()(const vmd::DecompositionTree& tree) const;

  /// Descriptors of a single mode, in per-mode name order.
  std::vector<double> mode_descriptors(const Grid& mode) const;

 private:
  ZernikeBasis basis_;
  EntropyOrders entropy_;
  std::size_t levels_;
  std::vector<std::string> names_;
};

FeatureVector extract_features(const vmd::DecompositionTree& tree, const ZernikeSpec& spec,
                               const EntropyOrders& entropy);

}  // namespace vmdtex::features
