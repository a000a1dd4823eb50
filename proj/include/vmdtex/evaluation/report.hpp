#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "vmdtex/evaluation/experiment.hpp"

namespace vmdtex::evaluation {

/// Stable-schema report. Undefined metrics are null. `config_echo` is stored
/// verbatim under "config".
nlohmann::ordered_json report_to_json(const ExperimentReport& report,
                                      const nlohmann::ordered_json& config_echo = nlohmann::ordered_json::object());

/// One row per scope: fold-mean Acc, Sen, Spec, PPV, NPV in percent, then PRR;
/// undefined cells read "undefined".
std::string report_to_csv(const ExperimentReport& report);

/// Human-readable table of the same numbers.
std::string report_to_text(const nlohmann::json& report_json);

nlohmann::ordered_json metrics_to_json(const ImageMetrics& m);
nlohmann::ordered_json counts_to_json(const ConfusionCounts& c);

}  // namespace vmdtex::evaluation
