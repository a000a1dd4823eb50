#include "vmdtex/evaluation/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "vmdtex/dataset/split.hpp"
#include "vmdtex/error.hpp"
#include "vmdtex/selection/zscore.hpp"
#include "vmdtex/util/random.hpp"

namespace vmdtex::evaluation {

using dataset::ClassLabel;

void ExperimentConfig::validate() const {
  if (protocol == Protocol::kfold && k < 2) throw config_error("BadK", "k must be >= 2");
  if (repeats < 1) throw config_error("BadParams", "repeats must be >= 1");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw config_error("BadFraction", "train_fraction must lie in (0, 1)");
  }
  if (magnification && !dataset::is_valid_magnification(*magnification)) {
    throw config_error("BadMagnification", "magnification must be 40, 100, 200 or 400");
  }
  if (relief_k < 1) throw config_error("BadK", "ReliefF k must be >= 1");
  if (!(significance.p_threshold > 0.0 && significance.p_threshold <= 1.0)) {
    throw config_error("BadParams", "p_threshold must lie in (0, 1]");
  }
  grid.validate();
}

std::string scope_name(std::optional<int> magnification) {
  return magnification ? std::to_string(*magnification) + "X" : "Full Dataset";
}

FittedModel fit_model(const selection::FeatureMatrix& train, const ExperimentConfig& config,
                      std::uint64_t seed) {
  const auto& labels = train.labels();
  const auto pos = static_cast<std::size_t>(std::ranges::count(labels, 1));
  const std::size_t smallest = std::min(pos, labels.size() - pos);
  if (smallest == 0) throw data_error("SingleClass", "training set holds a single class");
  if (smallest < 2) throw data_error("TooFewSamples", "each class needs at least two training images");

  FittedModel fit;
  fit.relief_k = std::min(config.relief_k, smallest - 1);
  selection::ReliefParams rp;
  rp.k_neighbors = fit.relief_k;
  rp.seed = util::derive_seed(seed, 1);
  rp.jobs = config.jobs;
  fit.ranking = selection::significance_filter(train, selection::relieff(train, rp), config.significance);

  const auto selected = train.select_columns(fit.ranking.selected_mask);
  const auto stats = selection::zscore_fit(selected);
  const auto normalized = selection::zscore_apply(stats, selected);

  auto grid = config.grid;
  grid.seed = util::derive_seed(seed, 2);
  grid.jobs = config.jobs;
  fit.grid = classifier::grid_search(normalized, grid);
  fit.model = classifier::train_lssvm(normalized, fit.grid.gamma, fit.grid.sigma);
  fit.model.feature_names = train.names();
  fit.model.feature_mask = fit.ranking.selected_mask;
  fit.model.norm_stats = stats;
  return fit;
}

namespace {

struct Partition {
  std::vector<std::string> train, test;
};

std::vector<Partition> partitions(const dataset::Manifest& scope, const ExperimentConfig& config) {
  std::vector<Partition> out;
  if (config.protocol == Protocol::kfold) {
    const auto folds = dataset::patient_folds(scope, config.k, config.seed);
    for (std::size_t f = 0; f < folds.size(); ++f) {
      Partition p;
      p.test = folds[f];
      for (std::size_t g = 0; g < folds.size(); ++g)
        if (g != f) p.train.insert(p.train.end(), folds[g].begin(), folds[g].end());
      std::ranges::sort(p.train);
      out.push_back(std::move(p));
    }
  } else {
    for (std::size_t r = 0; r < config.repeats; ++r) {
      const auto plan = dataset::patient_split(scope, config.train_fraction, util::derive_seed(config.seed, r));
      out.push_back({plan.train_patients, plan.test_patients});
    }
  }
  return out;
}

selection::FeatureMatrix matrix_of(const features::FeatureTable& table, const std::vector<std::size_t>& rows) {
  std::vector<double> data;
  std::vector<int> labels;
  data.reserve(rows.size() * table.names.size());
  for (std::size_t r : rows) {
    const auto& row = table.rows[r];
    data.insert(data.end(), row.values.begin(), row.values.end());
    labels.push_back(dataset::to_sign(row.label));
  }
  return selection::FeatureMatrix(rows.size(), table.names.size(), std::move(data), table.names,
                                  std::move(labels));
}

MeanStd summarize(const std::vector<std::optional<double>>& values) {
  std::vector<double> v;
  for (const auto& x : values)
    if (x) v.push_back(*x);
  if (v.empty()) return {};
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
  return {mean, sd};
}

ScopeReport run_scope(const dataset::Manifest& scope, std::optional<int> magnification,
                      const features::FeatureTable& table, const std::map<std::string, std::size_t>& row_of,
                      const ExperimentConfig& config) {
  ScopeReport report;
  report.name = scope_name(magnification);
  report.magnification = magnification;
  const auto parts = partitions(scope, config);
  for (std::size_t f = 0; f < parts.size(); ++f) {
    const auto& part = parts[f];
    const std::set<std::string> train_set(part.train.begin(), part.train.end());
    const std::set<std::string> test_set(part.test.begin(), part.test.end());
    std::vector<std::size_t> train_rows, test_rows;
    for (const auto& s : scope.samples()) {
      const std::size_t r = row_of.at(s.sample_id());
      if (train_set.contains(s.patient_id)) train_rows.push_back(r);
      else if (test_set.contains(s.patient_id)) test_rows.push_back(r);
    }

    FoldReport fold;
    fold.index = f;
    fold.train_patients = part.train;
    fold.test_patients = part.test;
    fold.train_images = train_rows.size();
    fold.test_images = test_rows.size();
    try {
      const auto fit = fit_model(matrix_of(table, train_rows), config, util::derive_seed(config.seed, 1000 + f));
      fold.relief_k = fit.relief_k;
      fold.selected_features = fit.ranking.selected_count();
      fold.selection_fallback = fit.ranking.fallback;
      fold.gamma = fit.grid.gamma;
      fold.sigma = fit.grid.sigma;
      fold.inner_accuracy = fit.grid.accuracy;

      std::vector<ClassLabel> predicted, truth;
      std::vector<ImageResult> results;
      for (std::size_t r : test_rows) {
        const auto& row = table.rows[r];
        const auto pred = classifier::predict_raw(fit.model, row.values);
        const ClassLabel label = pred.label > 0 ? ClassLabel::malignant : ClassLabel::benign;
        predicted.push_back(label);
        truth.push_back(row.label);
        results.push_back({row.patient_id, label, row.label});
      }
      fold.counts = confusion(predicted, truth);
      fold.metrics = image_metrics(fold.counts);
      fold.recognition = patient_recognition_rate(results, test_set);
    } catch (const Error& e) {
      throw Error(e.category(), e.kind(), report.name + " fold " + std::to_string(f) + ": " + e.what());
    }
    report.pooled += fold.counts;
    report.folds.push_back(std::move(fold));
  }
  report.pooled_metrics = image_metrics(report.pooled);

  auto collect = [&](auto pick) {
    std::vector<std::optional<double>> v;
    for (const auto& fold : report.folds) v.push_back(pick(fold));
    return summarize(v);
  };
  report.accuracy = collect([](const FoldReport& f) { return f.metrics.accuracy; });
  report.sensitivity = collect([](const FoldReport& f) { return f.metrics.sensitivity; });
  report.specificity = collect([](const FoldReport& f) { return f.metrics.specificity; });
  report.ppv = collect([](const FoldReport& f) { return f.metrics.ppv; });
  report.npv = collect([](const FoldReport& f) { return f.metrics.npv; });
  report.prr = collect([](const FoldReport& f) { return std::optional<double>(f.recognition.rate); });
  return report;
}

}  // namespace

ExperimentReport run_experiment(const dataset::Manifest& manifest, const features::FeatureTable& table,
                                const ExperimentConfig& config) {
  config.validate();
  std::map<std::string, std::size_t> row_of;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (table.rows[r].values.size() != table.names.size()) {
      throw data_error("BadFeatureFile", "feature row width mismatch for " + table.rows[r].sample_id);
    }
    row_of[table.rows[r].sample_id] = r;
  }
  for (const auto& s : manifest.samples()) {
    if (!row_of.contains(s.sample_id())) {
      throw data_error("MissingArtifact", "no features for sample " + s.sample_id());
    }
  }

  ExperimentReport report;
  report.seed = config.seed;
  report.protocol = config.protocol;
  report.feature_count = table.names.size();
  if (config.magnification) {
    report.scopes.push_back(
        run_scope(manifest.with_magnification(*config.magnification), config.magnification, table, row_of, config));
    return report;
  }
  for (int mag : dataset::kMagnifications) {
    if (manifest.count(mag, std::nullopt) == 0) continue;
    report.scopes.push_back(run_scope(manifest.with_magnification(mag), mag, table, row_of, config));
  }
  report.scopes.push_back(run_scope(manifest, std::nullopt, table, row_of, config));
  return report;
}

}  // namespace vmdtex::evaluation
