#include "vmdtex/features/feature_csv.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "vmdtex/error.hpp"

namespace vmdtex::features {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(',', start);
    cells.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return cells;
}

}  // namespace

std::string feature_table_to_csv(const FeatureTable& table) {
  std::string out = "sample_id,patient_id,magnification,label";
  for (const auto& name : table.names) out += "," + name;
  out += '\n';
  char buf[32];
  for (const auto& row : table.rows) {
    if (row.values.size() != table.names.size()) {
      throw data_error("BadFeatureFile", "row width does not match the header for " + row.sample_id);
    }
    out += row.sample_id + ',' + row.patient_id + ',' + std::to_string(row.magnification) + ',' +
           std::string(dataset::to_string(row.label));
    for (double v : row.values) {
      std::snprintf(buf, sizeof buf, "%.9g", v);
      out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

FeatureTable feature_table_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw data_error("BadFeatureFile", "empty feature file");
  auto header = split_line(line);
  if (header.size() < 4 || header[0] != "sample_id" || header[1] != "patient_id" ||
      header[2] != "magnification" || header[3] != "label") {
    throw data_error("BadFeatureFile", "feature file header mismatch");
  }
  FeatureTable table;
  table.names.assign(header.begin() + 4, header.end());

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cells = split_line(line);
    auto bad = [&] { return data_error("BadFeatureFile", "malformed feature line " + std::to_string(line_no)); };
    if (cells.size() != header.size()) throw bad();
    FeatureRow row;
    row.sample_id = cells[0];
    row.patient_id = cells[1];
    const auto label = dataset::parse_class(cells[3]);
    if (!label) throw bad();
    row.label = *label;
    auto [p, ec] = std::from_chars(cells[2].data(), cells[2].data() + cells[2].size(), row.magnification);
    if (ec != std::errc{}) throw bad();
    row.values.reserve(table.names.size());
    for (std::size_t c = 4; c < cells.size(); ++c) {
      double v = 0.0;
      auto [vp, vec] = std::from_chars(cells[c].data(), cells[c].data() + cells[c].size(), v);
      if (vec != std::errc{} || vp != cells[c].data() + cells[c].size()) throw bad();
      row.values.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace vmdtex::features
