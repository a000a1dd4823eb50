#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vmdtex/dataset/sample.hpp"

namespace vmdtex::dataset {

/// Indexed sample collection. Samples are ordered lexicographically by path;
/// every patient carries exactly one class.
class Manifest {
 public:
  /// Validates and indexes `samples` (sorted by path on construction).
  /// Throws Error{data, "EmptyDataset"} or Error{data, "ConflictingPatientClass"}.
  explicit Manifest(std::vector<SampleMeta> samples);

  const std::vector<SampleMeta>& samples() const noexcept { return samples_; }
  const std::map<std::string, ClassLabel>& patients() const noexcept { return patients_; }
  std::size_t size() const noexcept { return samples_.size(); }

  /// Sample count for a magnification and/or class; nullopt means "any".
  std::size_t count(std::optional<int> magnification, std::optional<ClassLabel> label) const;

  /// Sub-manifest restricted to one magnification. Throws EmptyDataset if none match.
  Manifest with_magnification(int magnification) const;

  /// Sub-manifest holding only samples of the given patients.
  Manifest with_patients(const std::vector<std::string>& patient_ids) const;

 private:
  std::vector<SampleMeta> samples_;
  std::map<std::string, ClassLabel> patients_;
};

/// Recursively scans `root` for rasters with parseable names.
/// A path component named "benign"/"malignant" that contradicts the filename
/// class is an error (Error{data, "ConflictingLabel"}).
Manifest build_manifest(const std::filesystem::path& root);

/// CSV with header `path,patient_id,class,subtype,magnification,sequence`, LF endings.
std::string manifest_to_csv(const Manifest& manifest);
Manifest manifest_from_csv(const std::string& csv);

}  // namespace vmdtex::dataset
