#include "vmdtex/evaluation/report.hpp"

#include <cstdio>

#include "vmdtex/error.hpp"

namespace vmdtex::evaluation {

namespace {

using ojson = nlohmann::ordered_json;

ojson opt(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

ojson mean_std(const MeanStd& m) { return {{"mean", opt(m.mean)}, {"std", opt(m.stddev)}}; }

std::string percent(const std::optional<double>& v) {
  if (!v) return "undefined";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * *v);
  return buf;
}

}  // namespace

ojson metrics_to_json(const ImageMetrics& m) {
  return {{"accuracy", opt(m.accuracy)},
          {"sensitivity", opt(m.sensitivity)},
          {"specificity", opt(m.specificity)},
          {"ppv", opt(m.ppv)},
          {"npv", opt(m.npv)}};
}

ojson counts_to_json(const ConfusionCounts& c) {
  return {{"tp", c.tp}, {"fp", c.fp}, {"tn", c.tn}, {"fn", c.fn}};
}

ojson report_to_json(const ExperimentReport& report, const ojson& config_echo) {
  ojson j;
  j["seed"] = report.seed;
  j["protocol"] = report.protocol == Protocol::kfold ? "kfold" : "holdout";
  j["feature_count"] = report.feature_count;
  j["config"] = config_echo;
  auto scopes = ojson::array();
  for (const auto& s : report.scopes) {
    ojson sj;
    sj["name"] = s.name;
    sj["magnification"] = s.magnification ? ojson(*s.magnification) : ojson(nullptr);
    sj["summary"] = {{"accuracy", mean_std(s.accuracy)},
                     {"sensitivity", mean_std(s.sensitivity)},
                     {"specificity", mean_std(s.specificity)},
                     {"ppv", mean_std(s.ppv)},
                     {"npv", mean_std(s.npv)},
                     {"prr", mean_std(s.prr)}};
    sj["pooled"] = {{"counts", counts_to_json(s.pooled)}, {"metrics", metrics_to_json(s.pooled_metrics)}};
    auto folds = ojson::array();
    for (const auto& f : s.folds) {
      ojson fj;
      fj["index"] = f.index;
      fj["train_patients"] = f.train_patients;
      fj["test_patients"] = f.test_patients;
      fj["train_images"] = f.train_images;
      fj["test_images"] = f.test_images;
      fj["relief_k"] = f.relief_k;
      fj["selected_features"] = f.selected_features;
      fj["selection_fallback"] = f.selection_fallback;
      fj["gamma"] = f.gamma;
      fj["sigma"] = f.sigma;
      fj["inner_accuracy"] = f.inner_accuracy;
      fj["counts"] = counts_to_json(f.counts);
      fj["metrics"] = metrics_to_json(f.metrics);
      fj["prr"] = f.recognition.rate;
      auto patients = ojson::array();
      for (const auto& p : f.recognition.patients) {
        patients.push_back({{"patient_id", p.patient_id},
                            {"images", p.images},
                            {"recognized", p.recognized},
                            {"score", p.score}});
      }
      fj["patient_scores"] = std::move(patients);
      folds.push_back(std::move(fj));
    }
    sj["folds"] = std::move(folds);
    scopes.push_back(std::move(sj));
  }
  j["scopes"] = std::move(scopes);
  return j;
}

std::string report_to_csv(const ExperimentReport& report) {
  std::string out = "zoom_factor,accuracy_pct,sensitivity_pct,specificity_pct,ppv_pct,npv_pct,prr_pct\n";
  for (const auto& s : report.scopes) {
    out += s.name;
    for (const MeanStd* m : {&s.accuracy, &s.sensitivity, &s.specificity, &s.ppv, &s.npv, &s.prr}) {
      out += ',';
      out += percent(m->mean);
    }
    out += '\n';
  }
  return out;
}

std::string report_to_text(const nlohmann::json& j) {
  std::string out;
  char line[256];
  try {
    std::snprintf(line, sizeof line, "seed %llu, protocol %s, %zu features\n",
                  static_cast<unsigned long long>(j.at("seed").get<std::uint64_t>()),
                  j.at("protocol").get<std::string>().c_str(), j.at("feature_count").get<std::size_t>());
    out += line;
    std::snprintf(line, sizeof line, "%-14s %8s %8s %8s %8s %8s %8s\n", "scope", "Acc%", "Sen%", "Spec%",
                  "PPV%", "NPV%", "PRR%");
    out += line;
    for (const auto& s : j.at("scopes")) {
      auto cell = [&](const char* key) {
        const auto& v = s.at("summary").at(key).at("mean");
        return v.is_null() ? std::string("undef") : percent(v.get<double>());
      };
      std::snprintf(line, sizeof line, "%-14s %8s %8s %8s %8s %8s %8s\n",
                    s.at("name").get<std::string>().c_str(), cell("accuracy").c_str(),
                    cell("sensitivity").c_str(), cell("specificity").c_str(), cell("ppv").c_str(),
                    cell("npv").c_str(), cell("prr").c_str());
      out += line;
    }
  } catch (const nlohmann::json::exception& e) {
    throw data_error("BadReportFile", std::string("malformed report: ") + e.what());
  }
  return out;
}

}  // namespace vmdtex::evaluation
