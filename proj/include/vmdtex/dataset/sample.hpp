#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vmdtex::dataset {

enum class ClassLabel { benign, malignant };

std::string_view to_string(ClassLabel label);
std::optional<ClassLabel> parse_class(std::string_view text);

/// Classifier encoding: malignant = +1, benign = -1.
inline int to_sign(ClassLabel label) { return label == ClassLabel::malignant ? 1 : -1; }

inline constexpr int kMagnifications[] = {40, 100, 200, 400};
bool is_valid_magnification(int magnification);

struct SampleMeta {
  std::filesystem::path path;
  std::string patient_id;  // "<procedure>-<year>-<slide>"
  ClassLabel class_label = ClassLabel::benign;
  std::string subtype;
  int magnification = 40;
  int sequence = 0;

  /// File stem, used as the sample identifier in feature files.
  std::string sample_id() const { return path.stem().string(); }

  bool operator==(const SampleMeta&) const = default;
};

/// Parses a BreakHis-style name
/// `<procedure>_<B|M>_<subtype>-<year>-<slide>-<magnification>-<sequence>.<png|tif|tiff>`.
/// Throws Error{data, "MalformedName"}.
SampleMeta parse_filename(std::string_view name);

bool has_raster_extension(const std::filesystem::path& path);

}  // namespace vmdtex::dataset
