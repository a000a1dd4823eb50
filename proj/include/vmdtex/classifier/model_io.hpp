#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>

#include "vmdtex/classifier/grid_search.hpp"
#include "vmdtex/classifier/lssvm.hpp"

namespace vmdtex::classifier {

/// {alphas, bias, gamma, sigma, support_inputs, support_labels, feature_mask,
///  norm_stats, class_map} plus feature_names, kkt_residual and an optional seed.
nlohmann::ordered_json model_to_json(const LsSvmModel& model, std::optional<std::uint64_t> seed = {});

/// Throws Error{data, "BadModelFile"}.
LsSvmModel model_from_json(const nlohmann::json& j);

nlohmann::ordered_json grid_table_to_json(const GridResult& result);

}  // namespace vmdtex::classifier
