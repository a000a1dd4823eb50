#include "vmdtex/dataset/sample.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "vmdtex/error.hpp"

namespace vmdtex::dataset {

std::string_view to_string(ClassLabel label) {
  return label == ClassLabel::malignant ? "malignant" : "benign";
}

std::optional<ClassLabel> parse_class(std::string_view text) {
  if (text == "benign") return ClassLabel::benign;
  if (text == "malignant") return ClassLabel::malignant;
  return std::nullopt;
}

bool is_valid_magnification(int magnification) {
  return std::ranges::find(kMagnifications, magnification) != std::end(kMagnifications);
}

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::ranges::all_of(s, [](unsigned char c) { return std::isdigit(c); });
}

bool all_alnum(std::string_view s) {
  return !s.empty() && std::ranges::all_of(s, [](unsigned char c) { return std::isalnum(c); });
}

int to_int(std::string_view s) {
  int value = 0;
  std::from_chars(s.data(), s.data() + s.size(), value);
  return value;
}

std::string lower(std::string s) {
  std::ranges::transform(s, s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

bool has_raster_extension(const std::filesystem::path& path) {
  const std::string ext = lower(path.extension().string());
  return ext == ".png" || ext == ".tif" || ext == ".tiff";
}

SampleMeta parse_filename(std::string_view name) {
  auto malformed = [&](const std::string& why) {
    return data_error("MalformedName", "cannot parse '" + std::string(name) + "': " + why);
  };

  const std::filesystem::path path{std::string(name)};
  if (!has_raster_extension(path)) throw malformed("unsupported extension");
  const std::string stem = path.stem().string();

  const auto fields = split(stem, '-');
  if (fields.size() != 5) throw malformed("expected 5 '-'-separated fields");
  const auto head = split(fields[0], '_');
  if (head.size() != 3 || !all_alnum(head[0]) || !all_alnum(head[2])) {
    throw malformed("expected <procedure>_<class>_<subtype>");
  }
  if (head[1] != "B" && head[1] != "M") throw malformed("class must be B or M");
  if (!all_digits(fields[1]) || !all_alnum(fields[2]) || !all_digits(fields[3]) ||
      !all_digits(fields[4])) {
    throw malformed("bad year/slide/magnification/sequence");
  }
  const int magnification = to_int(fields[3]);
  if (!is_valid_magnification(magnification)) throw malformed("magnification not in {40,100,200,400}");

  SampleMeta meta;
  meta.path = path;
  meta.patient_id = std::string(head[0]) + "-" + std::string(fields[1]) + "-" + std::string(fields[2]);
  meta.class_label = head[1] == "M" ? ClassLabel::malignant : ClassLabel::benign;
  meta.subtype = std::string(head[2]);
  meta.magnification = magnification;
  meta.sequence = to_int(fields[4]);
  return meta;
}

}  // namespace vmdtex::dataset
