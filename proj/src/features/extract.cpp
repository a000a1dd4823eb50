#include "vmdtex/features/extract.hpp"

#include <cmath>

#include "vmdtex/error.hpp"
#include "vmdtex/features/fractal.hpp"
#include "vmdtex/features/resample.hpp"

namespace vmdtex::features {

void EntropyOrders::validate() const {
  if (!(renyi > 0.0) || renyi == 1.0) throw config_error("BadOrder", "Renyi order must be > 0 and != 1");
  if (!(kapur_a > 0.0) || !(kapur_b > 0.0) || kapur_a == kapur_b) {
    throw config_error("BadOrder", "Kapur orders must be > 0 and distinct");
  }
}

std::vector<std::string> feature_names(std::size_t levels, const ZernikeSpec& spec) {
  std::vector<std::string> names;
  const auto moments = spec.moments();
  for (std::size_t l = 1; l <= levels; ++l) {
    for (const char* band : {"lo", "hi"}) {
      const std::string prefix = "comp" + std::to_string(l) + band + "/";
      for (const auto& [p, q] : moments)
        names.push_back(prefix + "zern_p" + std::to_string(p) + "_q" + std::to_string(q));
      for (const char* tag : {"KE", "RE", "YE", "FD"}) names.push_back(prefix + tag);
    }
  }
  return names;
}

FeatureExtractor::FeatureExtractor(const ZernikeSpec& zernike, const EntropyOrders& entropy,
                                   std::size_t levels)
    : basis_(zernike), entropy_(entropy), levels_(levels), names_(feature_names(levels, zernike)) {
  entropy_.validate();
  if (zernike.grid_side < 8) throw config_error("BadParams", "feature grid side must be >= 8");
}

std::vector<double> FeatureExtractor::mode_descriptors(const Grid& mode) const {
  const Grid resampled = resample_bilinear(mode, basis_.spec().grid_side);
  std::vector<double> out = basis_.magnitudes(resampled);
  const Histogram hist = intensity_histogram(resampled);
  out.push_back(kapur_entropy(hist, entropy_.kapur_a, entropy_.kapur_b));
  out.push_back(renyi_entropy(hist, entropy_.renyi));
  out.push_back(yager_entropy(hist, entropy_.yager));
  out.push_back(fractal_dimension(resampled));
  return out;
}

FeatureVector FeatureExtractor::operator()(const vmd::DecompositionTree& tree) const {
  if (tree.levels.size() != levels_) {
    throw data_error("BadTree", "expected " + std::to_string(levels_) + " levels, got " +
                                    std::to_string(tree.levels.size()));
  }
  FeatureVector fv;
  fv.names = names_;
  fv.values.reserve(names_.size());
  for (const vmd::Mode2D& mode : tree.components()) {
    const auto d = mode_descriptors(mode.spatial);
    fv.values.insert(fv.values.end(), d.begin(), d.end());
  }
  for (double v : fv.values) {
    if (!std::isfinite(v)) throw numerical_error("NonFinite", "non-finite feature value");
  }
  return fv;
}

FeatureVector extract_features(const vmd::DecompositionTree& tree, const ZernikeSpec& spec,
                               const EntropyOrders& entropy) {
  return FeatureExtractor(spec, entropy, tree.levels.size())(tree);
}

}  // namespace vmdtex::features
