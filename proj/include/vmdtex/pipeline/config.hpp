#pragma once

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string_view>

#include "vmdtex/evaluation/experiment.hpp"
#include "vmdtex/evaluation/feature_cache.hpp"

namespace vmdtex::pipeline {

struct SyntheticSpec {
  std::size_t patients_per_class = 10;
  std::size_t images_per_patient = 5;
  std::size_t image_side = 64;
  int magnification = 40;
};

/// Whole-pipeline settings loaded from TOML. Unknown keys are rejected.
///
///   seed, jobs, cache_dir, output_dir
///   [dataset]    root, synthetic, magnification ("all" | 40 | 100 | 200 | 400), channel
///   [synthetic]  patients_per_class, images_per_patient, image_side, magnification
///   [vmd]        levels, alpha, tau, epsilon, max_iterations, init
///   [features]   zernike_order, grid_side, renyi_order, kapur_orders, yager_denominator
///   [selection]  relief_k, p_threshold, fallback_count
///   [classifier] gammas, sigmas, inner_folds
///   [experiment] mode ("kfold" | "holdout"), k, repeats, train_fraction
///
/// Relative paths resolve against the config file's directory.
struct PipelineConfig {
  std::uint64_t seed = 0;
  std::size_t jobs = 0;  // 0 = all cores
  std::filesystem::path cache_dir;
  std::filesystem::path output_dir = "vmdtex-out";
  std::filesystem::path dataset_root;
  bool synthetic = false;
  SyntheticSpec synthetic_spec;
  evaluation::FeatureSettings features;
  evaluation::ExperimentConfig experiment;

  /// Applies seed/jobs/magnification to the nested settings and validates them.
  void finalize();
  /// Full echo of the effective settings.
  nlohmann::ordered_json to_json() const;
  std::optional<int> magnification() const { return experiment.magnification; }
};

/// Throws Error{config, "BadConfig"} for syntax errors, unknown keys and bad types.
PipelineConfig parse_config(std::string_view toml_text, const std::filesystem::path& base_dir);
PipelineConfig load_config(const std::filesystem::path& path);

/// "all" -> empty; "40"/"40X" etc. Throws Error{config, "BadMagnification"}.
std::optional<int> parse_magnification(std::string_view text);

}  // namespace vmdtex::pipeline
