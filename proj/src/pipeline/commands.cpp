#include "vmdtex/pipeline/commands.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

#include "vmdtex/classifier/model_io.hpp"
#include "vmdtex/dataset/manifest.hpp"
#include "vmdtex/error.hpp"
#include "vmdtex/evaluation/feature_cache.hpp"
#include "vmdtex/evaluation/report.hpp"
#include "vmdtex/features/feature_csv.hpp"
#include "vmdtex/pipeline/synthetic.hpp"
#include "vmdtex/selection/significance.hpp"
#include "vmdtex/util/atomic_file.hpp"
#include "vmdtex/util/hash.hpp"
#include "vmdtex/vmd/dump.hpp"
#include "vmdtex/vmd/tree.hpp"

namespace vmdtex::pipeline {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

fs::path meta_path(const fs::path& artifact) {
  fs::path p = artifact;
  p += ".meta.json";
  return p;
}

namespace {

void write_json(const fs::path& path, const ojson& j) { util::write_file_atomic(path, j.dump(2) + "\n"); }

void write_meta(const fs::path& artifact, const PipelineConfig& config, ojson extra = ojson::object()) {
  ojson j;
  j["seed"] = config.seed;
  j["config_sha256"] = util::sha256_hex(config.to_json().dump());
  for (auto& [k, v] : extra.items()) j[k] = v;
  write_json(meta_path(artifact), j);
}

dataset::Manifest read_manifest(const PipelineConfig& config) {
  const Artifacts a{config.output_dir};
  if (!fs::exists(a.manifest())) {
    throw data_error("MissingArtifact", "no manifest at " + a.manifest().string() + "; run `index` first");
  }
  return dataset::manifest_from_csv(util::read_file(a.manifest()));
}

dataset::Manifest scoped(const dataset::Manifest& m, const PipelineConfig& config) {
  return config.magnification() ? m.with_magnification(*config.magnification()) : m;
}

features::FeatureTable read_features(const PipelineConfig& config) {
  const Artifacts a{config.output_dir};
  if (!fs::exists(a.features())) {
    throw data_error("MissingArtifact", "no features at " + a.features().string() + "; run `extract` first");
  }
  if (fs::exists(meta_path(a.features()))) {
    const auto meta = nlohmann::json::parse(util::read_file(meta_path(a.features())), nullptr, false);
    if (meta.is_discarded() || !meta.contains("features") ||
        meta["features"].dump() != nlohmann::json::parse(config.features.fingerprint()).dump()) {
      throw data_error("StaleArtifact", "features were extracted with different settings; rerun `extract`");
    }
  }
  return features::feature_table_from_csv(util::read_file(a.features()));
}

selection::FeatureMatrix scoped_matrix(const features::FeatureTable& table, const PipelineConfig& config) {
  std::vector<double> data;
  std::vector<int> labels;
  std::size_t rows = 0;
  for (const auto& r : table.rows) {
    if (config.magnification() && r.magnification != *config.magnification()) continue;
    data.insert(data.end(), r.values.begin(), r.values.end());
    labels.push_back(dataset::to_sign(r.label));
    ++rows;
  }
  if (rows == 0) throw data_error("EmptyDataset", "no feature rows in the selected magnification scope");
  return selection::FeatureMatrix(rows, table.names.size(), std::move(data), table.names, std::move(labels));
}

}  // namespace

fs::path cmd_index(const PipelineConfig& config, const std::optional<fs::path>& root,
                   const std::optional<fs::path>& out) {
  const Artifacts a{config.output_dir};
  fs::path data_root;
  if (root) {
    data_root = *root;
  } else if (config.synthetic) {
    data_root = a.synthetic_data();
    generate_synthetic(data_root, config.synthetic_spec, config.seed);
  } else {
    data_root = config.dataset_root;
  }
  const auto manifest = dataset::build_manifest(data_root);
  const fs::path target = out.value_or(a.manifest());
  util::write_file_atomic(target, dataset::manifest_to_csv(manifest));
  write_meta(target, config, {{"root", data_root.generic_string()}, {"rows", manifest.size()}});
  return target;
}

std::vector<fs::path> cmd_decompose(const PipelineConfig& config, const std::vector<fs::path>& images) {
  if (images.empty()) throw config_error("BadArguments", "decompose needs at least one image path");
  const Artifacts a{config.output_dir};
  std::vector<fs::path> written;
  for (const auto& image : images) {
    const auto gray = load_green_channel(image, config.features.channel);
    const auto tree = vmd::iterative_vmd(gray, config.features.levels, config.features.vmd);
    const auto files = vmd::write_component_dump(a.components() / image.stem(), tree, config.seed);
    written.insert(written.end(), files.begin(), files.end());
  }
  return written;
}

fs::path cmd_extract(const PipelineConfig& config) {
  const Artifacts a{config.output_dir};
  const auto manifest = scoped(read_manifest(config), config);
  const evaluation::FeatureCache cache(config.cache_dir.empty() ? a.cache() : config.cache_dir, config.features);
  const auto table = evaluation::featurize(manifest, config.features, &cache, config.jobs);
  util::write_file_atomic(a.features(), features::feature_table_to_csv(table));
  write_meta(a.features(), config,
             {{"features", ojson::parse(config.features.fingerprint())},
              {"magnification", evaluation::scope_name(config.magnification())},
              {"rows", table.rows.size()}});
  return a.features();
}

fs::path cmd_select(const PipelineConfig& config) {
  const Artifacts a{config.output_dir};
  const auto matrix = scoped_matrix(read_features(config), config);
  const auto pos = static_cast<std::size_t>(std::ranges::count(matrix.labels(), 1));
  const std::size_t smallest = std::min(pos, matrix.rows() - pos);
  selection::ReliefParams rp;
  rp.k_neighbors = smallest > 1 ? std::min(config.experiment.relief_k, smallest - 1) : config.experiment.relief_k;
  rp.seed = config.seed;
  rp.jobs = config.jobs;
  const auto ranked =
      selection::significance_filter(matrix, selection::relieff(matrix, rp), config.experiment.significance);
  ojson j = selection::selection_report(ranked, matrix.names());
  j["relief_k"] = rp.k_neighbors;
  j["seed"] = config.seed;
  write_json(a.selection(), j);
  return a.selection();
}

fs::path cmd_train(const PipelineConfig& config) {
  const Artifacts a{config.output_dir};
  const auto matrix = scoped_matrix(read_features(config), config);
  const auto fit = evaluation::fit_model(matrix, config.experiment, config.seed);
  ojson j = classifier::model_to_json(fit.model, config.seed);
  j["grid_search"] = classifier::grid_table_to_json(fit.grid);
  write_json(a.model(), j);
  return a.model();
}

fs::path cmd_evaluate(const PipelineConfig& config) {
  const Artifacts a{config.output_dir};
  const auto manifest = scoped(read_manifest(config), config);
  const auto report = evaluation::run_experiment(manifest, read_features(config), config.experiment);
  write_json(a.report_json(), evaluation::report_to_json(report, config.to_json()));
  util::write_file_atomic(a.report_csv(), evaluation::report_to_csv(report));
  write_meta(a.report_csv(), config);
  return a.report_json();
}

std::string cmd_report(const fs::path& report) {
  const auto j = nlohmann::json::parse(util::read_file(report), nullptr, false);
  if (j.is_discarded()) throw data_error("BadReportFile", "report is not valid JSON: " + report.string());
  return evaluation::report_to_text(j);
}

}  // namespace vmdtex::pipeline
