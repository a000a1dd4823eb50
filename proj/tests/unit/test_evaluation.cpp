#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "oracles.hpp"
#include "vmdtex/error.hpp"
#include "vmdtex/evaluation/experiment.hpp"
#include "vmdtex/evaluation/feature_cache.hpp"
#include "vmdtex/evaluation/metrics.hpp"
#include "vmdtex/evaluation/report.hpp"

using namespace vmdtex;
using namespace vmdtex::evaluation;
using dataset::ClassLabel;

namespace {

std::string kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return "";
}

std::vector<ImageResult> results_for(const std::string& id, ClassLabel truth, std::size_t images, std::size_t right) {
  const ClassLabel wrong = truth == ClassLabel::benign ? ClassLabel::malignant : ClassLabel::benign;
  std::vector<ImageResult> out;
  for (std::size_t i = 0; i < images; ++i) out.push_back({id, i < right ? truth : wrong, truth});
  return out;
}

/// Manifest of `patients` patients with `images` 40X images each, plus a
/// feature table whose first column is informative and the rest are noise.
std::pair<dataset::Manifest, features::FeatureTable> fake_study(std::size_t patients, std::size_t images,
                                                                std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  std::vector<dataset::SampleMeta> samples;
  features::FeatureTable table;
  table.names = {"signal", "noise_a", "noise_b"};
  for (std::size_t p = 0; p < patients; ++p) {
    const bool malignant = p % 2 == 1;
    const std::string slide = std::to_string(1000 + p);
    for (std::size_t s = 1; s <= images; ++s) {
      const std::string name = std::string("SOB_") + (malignant ? "M_DC" : "B_A") + "-14-" + slide + "-40-" +
                               std::to_string(100 + s).substr(1) + ".png";
      auto meta = dataset::parse_filename(name);
      meta.path = std::filesystem::path("/fake") / name;
      samples.push_back(meta);
    }
  }
  dataset::Manifest manifest(samples);
  for (const auto& m : manifest.samples()) {
    const double y = m.class_label == ClassLabel::malignant ? 1.0 : -1.0;
    table.rows.push_back({m.sample_id(), m.patient_id, m.magnification, m.class_label,
                          {2.0 * y + 0.5 * nd(gen), nd(gen), nd(gen)}});
  }
  return {manifest, table};
}

ExperimentConfig quick_config() {
  ExperimentConfig c;
  c.k = 3;
  c.relief_k = 5;
  c.grid.gammas = {1.0, 10.0};
  c.grid.sigmas = {1.0, 4.0};
  c.grid.inner_folds = 3;
  c.seed = 42;
  return c;
}

}  // namespace

TEST_CASE("confusion counts and image metrics") {
  using enum ClassLabel;
  const std::vector<ClassLabel> pred{malignant, malignant, benign, benign, malignant};
  const std::vector<ClassLabel> truth{malignant, benign, benign, malignant, malignant};
  const auto c = confusion(pred, truth);
  CHECK(c == ConfusionCounts{2, 1, 1, 1});
  CHECK(kind_of([&] { confusion(std::span(pred).first(2), truth); }) == "LengthMismatch");

  const auto m = image_metrics({40, 10, 45, 5});
  CHECK(*m.accuracy == doctest::Approx(0.85));
  CHECK(*m.sensitivity == doctest::Approx(40.0 / 45));
  CHECK(*m.specificity == doctest::Approx(45.0 / 55));
  CHECK(*m.ppv == doctest::Approx(0.8));
  CHECK(*m.npv == doctest::Approx(0.9));
  const double prev = 45.0 / 100;
  CHECK(*m.accuracy == doctest::Approx(*m.sensitivity * prev + *m.specificity * (1 - prev)).epsilon(1e-14));

  const auto none_positive = image_metrics({0, 0, 7, 3});
  CHECK_FALSE(none_positive.ppv.has_value());
  CHECK(*none_positive.sensitivity == 0.0);
  CHECK(*none_positive.npv == doctest::Approx(0.7));
  CHECK(kind_of([] { image_metrics({}); }) == "EmptyEvaluation");

  ConfusionCounts sum{1, 2, 3, 4};
  sum += {1, 1, 1, 1};
  CHECK(sum == ConfusionCounts{2, 3, 4, 5});
}

TEST_CASE("patient recognition rate") {
  auto r = results_for("A", ClassLabel::benign, 10, 10);
  const auto b = results_for("B", ClassLabel::malignant, 10, 4);
  r.insert(r.end(), b.begin(), b.end());
  const std::set<std::string> known{"A", "B", "C"};
  const auto prr = patient_recognition_rate(r, known);
  CHECK(prr.rate == doctest::Approx(0.7));
  REQUIRE(prr.patients.size() == 2);
  CHECK(prr.patients[1].patient_id == "B");
  CHECK(prr.patients[1].images == 10);
  CHECK(prr.patients[1].recognized == 4);
  CHECK(prr.patients[1].score == doctest::Approx(0.4));

  SUBCASE("equal image counts make it equal to accuracy") {
    std::size_t right = 0;
    for (const auto& x : r) right += x.predicted == x.truth;
    CHECK(prr.rate == doctest::Approx(static_cast<double>(right) / r.size()));
  }
  SUBCASE("unequal counts weight patients, not images") {
    auto u = results_for("A", ClassLabel::benign, 2, 2);
    const auto v = results_for("B", ClassLabel::benign, 8, 0);
    u.insert(u.end(), v.begin(), v.end());
    CHECK(patient_recognition_rate(u, known).rate == doctest::Approx(0.5));
  }
  SUBCASE("duplicating every result changes nothing") {
    auto d = r;
    d.insert(d.end(), r.begin(), r.end());
    CHECK(patient_recognition_rate(d, known).rate == doctest::Approx(prr.rate).epsilon(1e-15));
  }
  SUBCASE("errors") {
    CHECK(kind_of([&] { patient_recognition_rate(r, {"A"}); }) == "UnknownPatient");
    CHECK(kind_of([&] { patient_recognition_rate({}, known); }) == "EmptyEvaluation");
  }
}

TEST_CASE("k-fold experiment on a fake study") {
  const auto [manifest, table] = fake_study(82, 3, 1);
  const auto config = quick_config();
  const auto report = run_experiment(manifest, table, config);

  CHECK(report.scopes.size() == 2);
  CHECK(report.scopes[0].name == "40X");
  CHECK(report.scopes[1].name == "Full Dataset");
  CHECK(report.feature_count == 3);
  const auto& full = report.scopes[1];
  REQUIRE(full.folds.size() == 3);

  std::set<std::string> seen;
  ConfusionCounts pooled;
  std::size_t test_images = 0;
  for (const auto& f : full.folds) {
    for (const auto& p : f.test_patients) CHECK(seen.insert(p).second);
    for (const auto& p : f.train_patients)
      CHECK(std::ranges::find(f.test_patients, p) == f.test_patients.end());
    CHECK(f.train_patients.size() + f.test_patients.size() == 82);
    CHECK(f.counts.total() == f.test_images);
    pooled += f.counts;
    test_images += f.test_images;
    CHECK(f.relief_k <= 5);
    CHECK(f.selected_features >= 1);
  }
  CHECK(seen.size() == 82);
  CHECK(full.pooled == pooled);
  CHECK(test_images == manifest.samples().size());
  CHECK(*full.accuracy.mean >= 0.9);
  CHECK(full.accuracy.stddev.has_value());

  double mean = 0;
  for (const auto& f : full.folds) mean += *f.metrics.accuracy;
  CHECK(*full.accuracy.mean == doctest::Approx(mean / 3));

  SUBCASE("deterministic, including across thread counts") {
    auto c2 = config;
    c2.jobs = 4;
    const auto again = run_experiment(manifest, table, c2);
    const nlohmann::ordered_json echo = {{"k", 3}};
    CHECK(report_to_json(again, echo).dump() == report_to_json(report, echo).dump());
  }
  SUBCASE("holdout protocol") {
    auto h = config;
    h.protocol = Protocol::holdout;
    h.repeats = 2;
    h.magnification = 40;
    const auto hr = run_experiment(manifest, table, h);
    REQUIRE(hr.scopes.size() == 1);
    CHECK(hr.scopes[0].folds.size() == 2);
    CHECK(hr.scopes[0].folds[0].test_patients.size() == 25);
  }
  SUBCASE("missing feature rows") {
    auto t = table;
    t.rows.pop_back();
    CHECK(kind_of([&] { run_experiment(manifest, t, config); }) == "MissingArtifact");
  }
  SUBCASE("report formats") {
    const auto j = report_to_json(report, nlohmann::ordered_json::object());
    CHECK(j.at("scopes").size() == 2);
    const auto csv = report_to_csv(report);
    CHECK(csv.starts_with("zoom_factor,accuracy_pct,sensitivity_pct,specificity_pct,ppv_pct,npv_pct,prr_pct\n"));
    CHECK(csv.find("Full Dataset,") != std::string::npos);
    const auto text = report_to_text(nlohmann::json::parse(j.dump()));
    CHECK(text.find("Full Dataset") != std::string::npos);
    CHECK(kind_of([] { report_to_text(nlohmann::json::array()); }) == "BadReportFile");
  }
}

TEST_CASE("fit_model clamps ReliefF k to the smallest class") {
  const auto [manifest, table] = fake_study(8, 1, 2);
  std::vector<double> data;
  std::vector<int> labels;
  for (const auto& r : table.rows) {
    data.insert(data.end(), r.values.begin(), r.values.end());
    labels.push_back(dataset::to_sign(r.label));
  }
  const selection::FeatureMatrix m(labels.size(), 3, data, table.names, labels);
  auto c = quick_config();
  c.relief_k = 10;
  c.grid.inner_folds = 2;
  const auto fitted = fit_model(m, c, 1);
  CHECK(fitted.relief_k == 3);
  CHECK(fitted.model.feature_mask.size() == 3);
}

TEST_CASE("experiment config validation") {
  auto c = quick_config();
  c.k = 1;
  CHECK_THROWS_AS(c.validate(), Error);
  c = quick_config();
  c.train_fraction = 1.0;
  CHECK_THROWS_AS(c.validate(), Error);
  CHECK(scope_name(std::nullopt) == "Full Dataset");
  CHECK(scope_name(200) == "200X");
}

TEST_CASE("feature cache") {
  oracle::TempDir dir("cache");
  FeatureSettings s;
  const FeatureCache cache(dir.path, s);
  CHECK(cache.enabled());
  CHECK_FALSE(cache.load("abc").has_value());
  cache.store("abc", {1.5, -2.25, 1e-300});
  const auto got = cache.load("abc");
  REQUIRE(got.has_value());
  CHECK(*got == std::vector<double>{1.5, -2.25, 1e-300});

  SUBCASE("settings change the key") {
    FeatureSettings t = s;
    t.vmd.alpha = 2000;
    const FeatureCache other(dir.path, t);
    CHECK(other.key("abc") != cache.key("abc"));
    CHECK_FALSE(other.load("abc").has_value());
    CHECK(FeatureCache(dir.path, s).key("abc") == cache.key("abc"));
  }
  SUBCASE("corrupt entries are ignored") {
    for (const auto& e : std::filesystem::recursive_directory_iterator(dir.path))
      if (e.is_regular_file()) std::ofstream(e.path()) << "{not json";
    CHECK_FALSE(cache.load("abc").has_value());
  }
  SUBCASE("disabled cache") {
    CHECK_FALSE(FeatureCache({}, s).enabled());
  }
  SUBCASE("settings validation") {
    FeatureSettings bad = s;
    bad.vmd.modes = 3;
    CHECK_THROWS_AS(bad.validate(), Error);
  }
}
