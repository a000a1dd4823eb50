#include "vmdtex/classifier/model_io.hpp"

#include "vmdtex/error.hpp"

namespace vmdtex::classifier {

nlohmann::ordered_json model_to_json(const LsSvmModel& model, std::optional<std::uint64_t> seed) {
  nlohmann::ordered_json j;
  j["alphas"] = model.alphas;
  j["bias"] = model.bias;
  j["gamma"] = model.gamma;
  j["sigma"] = model.sigma;
  auto inputs = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < model.rows(); ++i) {
    inputs.push_back(std::vector<double>(model.support_inputs.begin() + static_cast<std::ptrdiff_t>(i * model.dim),
                                         model.support_inputs.begin() + static_cast<std::ptrdiff_t>((i + 1) * model.dim)));
  }
  j["support_inputs"] = std::move(inputs);
  j["support_labels"] = model.support_labels;
  j["feature_mask"] = model.feature_mask;
  j["norm_stats"] = {{"means", model.norm_stats.means}, {"scales", model.norm_stats.scales}};
  j["class_map"] = {{"-1", "benign"}, {"1", "malignant"}};
  j["feature_names"] = model.feature_names;
  j["dim"] = model.dim;
  j["kkt_residual"] = model.kkt_residual;
  if (seed) j["seed"] = *seed;
  return j;
}

LsSvmModel model_from_json(const nlohmann::json& j) {
  LsSvmModel m;
  try {
    m.alphas = j.at("alphas").get<std::vector<double>>();
    m.bias = j.at("bias").get<double>();
    m.gamma = j.at("gamma").get<double>();
    m.sigma = j.at("sigma").get<double>();
    m.support_labels = j.at("support_labels").get<std::vector<int>>();
    m.dim = j.at("dim").get<std::size_t>();
    for (const auto& row : j.at("support_inputs")) {
      const auto r = row.get<std::vector<double>>();
      if (r.size() != m.dim) throw data_error("BadModelFile", "support row width mismatch");
      m.support_inputs.insert(m.support_inputs.end(), r.begin(), r.end());
    }
    m.feature_mask = j.at("feature_mask").get<std::vector<bool>>();
    m.norm_stats.means = j.at("norm_stats").at("means").get<std::vector<double>>();
    m.norm_stats.scales = j.at("norm_stats").at("scales").get<std::vector<double>>();
    if (j.contains("feature_names")) m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    if (j.contains("kkt_residual")) m.kkt_residual = j.at("kkt_residual").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw data_error("BadModelFile", std::string("malformed model file: ") + e.what());
  }
  if (m.alphas.size() != m.support_labels.size() || m.support_inputs.size() != m.rows() * m.dim ||
      !(m.sigma > 0.0)) {
    throw data_error("BadModelFile", "inconsistent model file");
  }
  return m;
}

nlohmann::ordered_json grid_table_to_json(const GridResult& result) {
  nlohmann::ordered_json j;
  j["gamma"] = result.gamma;
  j["sigma"] = result.sigma;
  j["accuracy"] = result.accuracy;
  auto cells = nlohmann::ordered_json::array();
  for (const auto& c : result.table) {
    nlohmann::ordered_json cell{{"gamma", c.gamma}, {"sigma", c.sigma}};
    cell["accuracy"] = c.accuracy ? nlohmann::ordered_json(*c.accuracy) : nlohmann::ordered_json(nullptr);
    if (!c.failure.empty()) cell["failure"] = c.failure;
    cells.push_back(std::move(cell));
  }
  j["table"] = std::move(cells);
  return j;
}

}  // namespace vmdtex::classifier
