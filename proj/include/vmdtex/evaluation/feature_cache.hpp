#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vmdtex/dataset/image.hpp"
#include "vmdtex/dataset/manifest.hpp"
#include "vmdtex/features/extract.hpp"
#include "vmdtex/features/feature_csv.hpp"
#include "vmdtex/vmd/vmd.hpp"

namespace vmdtex::evaluation {

/// Everything that determines a sample's feature vector besides its pixels.
struct FeatureSettings {
  vmd::VmdParams vmd;
  int levels = 5;
  features::ZernikeSpec zernike;
  features::EntropyOrders entropy;
  ChannelMode channel = ChannelMode::green;

  void validate() const;
  /// Canonical JSON text of the settings; part of every cache key.
  std::string fingerprint() const;
};

/// On-disk feature store keyed by SHA-256(file content hash + settings
/// fingerprint). Entries are written once via temp file + rename, so
/// concurrent writers of the same key are harmless.
class FeatureCache {
 public:
  /// An empty directory disables the cache.
  FeatureCache(std::filesystem::path directory, const FeatureSettings& settings);

  bool enabled() const noexcept { return !directory_.empty(); }
  std::string key(const std::string& content_hash) const;
  std::optional<std::vector<double>> load(const std::string& content_hash) const;
  void store(const std::string& content_hash, const std::vector<double>& values) const;

 private:
  std::filesystem::path entry_path(const std::string& key) const;

  std::filesystem::path directory_;
  std::string fingerprint_;
};

/// Decomposes and describes one image file.
std::vector<double> compute_features(const std::filesystem::path& image, const FeatureSettings& settings,
                                     const features::FeatureExtractor& extractor);

/// Feature table for every manifest sample, in manifest order. Per-image work
/// runs on `jobs` workers; the cache (if given) is consulted first.
features::FeatureTable featurize(const dataset::Manifest& manifest, const FeatureSettings& settings,
                                 const FeatureCache* cache, std::size_t jobs);

}  // namespace vmdtex::evaluation
