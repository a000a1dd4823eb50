#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vmdtex/pipeline/config.hpp"

namespace vmdtex::pipeline {

/// Artifact locations under the configured output directory.
struct Artifacts {
  std::filesystem::path root;

  std::filesystem::path manifest() const { return root / "manifest.csv"; }
  std::filesystem::path features() const { return root / "features.csv"; }
  std::filesystem::path selection() const { return root / "selection.json"; }
  std::filesystem::path model() const { return root / "model.json"; }
  std::filesystem::path report_json() const { return root / "report.json"; }
  std::filesystem::path report_csv() const { return root / "report.csv"; }
  std::filesystem::path components() const { return root / "components"; }
  std::filesystem::path synthetic_data() const { return root / "synthetic-data"; }
  std::filesystem::path cache() const { return root / "cache"; }
};

/// `<artifact>.meta.json` next to CSV outputs, carrying the seed echo.
std::filesystem::path meta_path(const std::filesystem::path& artifact);

/// Scans the dataset (generating the synthetic fixture first when configured)
/// and writes the manifest CSV. Returns the manifest path.
std::filesystem::path cmd_index(const PipelineConfig& config,
                                const std::optional<std::filesystem::path>& root = {},
                                const std::optional<std::filesystem::path>& out = {});

/// Decomposes each image and writes its components under components/<sample>/.
std::vector<std::filesystem::path> cmd_decompose(const PipelineConfig& config,
                                                 const std::vector<std::filesystem::path>& images);

/// Features for every indexed sample in the magnification scope.
std::filesystem::path cmd_extract(const PipelineConfig& config);

/// ReliefF + significance filter over all extracted rows in scope.
std::filesystem::path cmd_select(const PipelineConfig& config);

/// Fits selection, normalization and the classifier on all rows in scope.
std::filesystem::path cmd_train(const PipelineConfig& config);

/// Runs the configured experiment; writes report.json and report.csv.
std::filesystem::path cmd_evaluate(const PipelineConfig& config);

/// Plain-text summary of a report file.
std::string cmd_report(const std::filesystem::path& report);

}  // namespace vmdtex::pipeline
