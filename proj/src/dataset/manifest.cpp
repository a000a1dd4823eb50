#include "vmdtex/dataset/manifest.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "vmdtex/error.hpp"

namespace vmdtex::dataset {

namespace fs = std::filesystem;

Manifest::Manifest(std::vector<SampleMeta> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw data_error("EmptyDataset", "no images found");
  std::ranges::sort(samples_, [](const SampleMeta& a, const SampleMeta& b) {
    return a.path.generic_string() < b.path.generic_string();
  });
  for (const auto& s : samples_) {
    auto [it, inserted] = patients_.emplace(s.patient_id, s.class_label);
    if (!inserted && it->second != s.class_label) {
      throw data_error("ConflictingPatientClass",
                       "patient " + s.patient_id + " appears with both class labels");
    }
  }
}

std::size_t Manifest::count(std::optional<int> magnification,
                            std::optional<ClassLabel> label) const {
  return static_cast<std::size_t>(std::ranges::count_if(samples_, [&](const SampleMeta& s) {
    return (!magnification || s.magnification == *magnification) &&
           (!label || s.class_label == *label);
  }));
}

Manifest Manifest::with_magnification(int magnification) const {
  std::vector<SampleMeta> subset;
  for (const auto& s : samples_)
    if (s.magnification == magnification) subset.push_back(s);
  return Manifest(std::move(subset));
}

Manifest Manifest::with_patients(const std::vector<std::string>& patient_ids) const {
  const std::set<std::string> wanted(patient_ids.begin(), patient_ids.end());
  std::vector<SampleMeta> subset;
  for (const auto& s : samples_)
    if (wanted.contains(s.patient_id)) subset.push_back(s);
  return Manifest(std::move(subset));
}

Manifest build_manifest(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw data_error("MissingRoot", "dataset root is not a readable directory: " + root.string());
  }
  std::vector<SampleMeta> samples;
  for (auto it = fs::recursive_directory_iterator(root, fs::directory_options::skip_permission_denied);
       it != fs::recursive_directory_iterator(); ++it) {
    if (!it->is_regular_file() || !has_raster_extension(it->path())) continue;
    SampleMeta meta;
    try {
      meta = parse_filename(it->path().filename().string());
    } catch (const Error&) {
      continue;  // not a dataset image
    }
    for (const auto& component : fs::relative(it->path(), root)) {
      const auto dir_label = parse_class(component.string());
      if (dir_label && *dir_label != meta.class_label) {
        throw data_error("ConflictingLabel", "directory says " + component.string() +
                                                 " but filename says otherwise: " +
                                                 it->path().string());
      }
    }
    meta.path = it->path();
    samples.push_back(std::move(meta));
  }
  return Manifest(std::move(samples));
}

std::string manifest_to_csv(const Manifest& manifest) {
  std::ostringstream out;
  out << "path,patient_id,class,subtype,magnification,sequence\n";
  for (const auto& s : manifest.samples()) {
    const std::string p = s.path.generic_string();
    if (p.find_first_of(",\"\n\r") != std::string::npos) {
      throw data_error("UnsupportedPath", "path contains a CSV delimiter: " + p);
    }
    out << p << ',' << s.patient_id << ',' << to_string(s.class_label) << ',' << s.subtype << ','
        << s.magnification << ',' << s.sequence << '\n';
  }
  return out.str();
}

Manifest manifest_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != "path,patient_id,class,subtype,magnification,sequence") {
    throw data_error("BadManifest", "manifest CSV header mismatch");
  }
  std::vector<SampleMeta> samples;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    auto bad = [&] { return data_error("BadManifest", "malformed manifest line " + std::to_string(line_no)); };
    if (cells.size() != 6) throw bad();
    const auto label = parse_class(cells[2]);
    if (!label) throw bad();
    SampleMeta s;
    s.path = cells[0];
    s.patient_id = cells[1];
    s.class_label = *label;
    s.subtype = cells[3];
    auto parse_int = [&](const std::string& text, int& out) {
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
      if (ec != std::errc{} || ptr != text.data() + text.size()) throw bad();
    };
    parse_int(cells[4], s.magnification);
    parse_int(cells[5], s.sequence);
    if (!is_valid_magnification(s.magnification)) throw bad();
    samples.push_back(std::move(s));
  }
  return Manifest(std::move(samples));
}

}  // namespace vmdtex::dataset
