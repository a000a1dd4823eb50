#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <opencv2/imgcodecs.hpp>
#include <set>

#include "oracles.hpp"
#include "vmdtex/dataset/image.hpp"
#include "vmdtex/dataset/manifest.hpp"
#include "vmdtex/dataset/split.hpp"
#include "vmdtex/error.hpp"

using namespace vmdtex;
using namespace vmdtex::dataset;
namespace fs = std::filesystem;

namespace {

std::string error_kind(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return "";
}

void touch_png(const fs::path& p, unsigned char g = 128) {
  const std::vector<unsigned char> rgb(4 * 4 * 3, g);
  write_rgb_png(p, 4, 4, rgb);
}

/// Manifest with `patients` patients (alternating class), two images each.
Manifest synthetic_manifest(std::size_t patients) {
  std::vector<SampleMeta> samples;
  for (std::size_t p = 0; p < patients; ++p) {
    for (int s = 1; s <= 2; ++s) {
      const bool mal = p % 2 == 1;
      char name[80];
      std::snprintf(name, sizeof name, "SOB_%s-14-%zu-40-%03d.png", mal ? "M_DC" : "B_A", 1000 + p, s);
      auto meta = parse_filename(name);
      meta.path = fs::path("root") / name;
      samples.push_back(meta);
    }
  }
  return Manifest(samples);
}

}  // namespace

TEST_CASE("parse_filename reads BreakHis names") {
  const auto a = parse_filename("SOB_B_TA-14-4659-40-001.png");
  CHECK(a.class_label == ClassLabel::benign);
  CHECK(a.subtype == "TA");
  CHECK(a.patient_id == "SOB-14-4659");
  CHECK(a.magnification == 40);
  CHECK(a.sequence == 1);

  const auto b = parse_filename("SOB_M_DC-14-2523-400-012.png");
  CHECK(b.class_label == ClassLabel::malignant);
  CHECK(b.subtype == "DC");
  CHECK(b.magnification == 400);
  CHECK(b.sequence == 12);
  CHECK(b.sample_id() == "SOB_M_DC-14-2523-400-012");
}

TEST_CASE("parse_filename rejects malformed names") {
  for (const char* bad : {"notes.txt", "SOB_B_TA-14-4659-40.png", "SOB_X_TA-14-4659-40-001.png",
                          "SOB_B_TA-14-4659-50-001.png", "SOB_B_TA-14-4659-40-abc.png", "SOB_B-14-4659-40-001.png"}) {
    CAPTURE(bad);
    CHECK(error_kind([&] { parse_filename(bad); }) == "MalformedName");
  }
}

TEST_CASE("build_manifest scans, orders and validates") {
  oracle::TempDir dir("manifest");
  SUBCASE("empty directory") {
    CHECK(error_kind([&] { build_manifest(dir.path); }) == "EmptyDataset");
  }
  SUBCASE("one valid file among noise") {
    touch_png(dir.path / "benign" / "SOB_B_A-14-22549AB-40-001.png");
    std::ofstream(dir.path / "readme.txt") << "x";
    const auto m = build_manifest(dir.path);
    CHECK(m.size() == 1);
    CHECK(m.patients().size() == 1);
  }
  SUBCASE("directory label contradicting the filename") {
    touch_png(dir.path / "malignant" / "SOB_B_A-14-22549AB-40-001.png");
    CHECK(error_kind([&] { build_manifest(dir.path); }) == "ConflictingLabel");
  }
  SUBCASE("patient with both labels") {
    touch_png(dir.path / "SOB_B_A-14-100-40-001.png");
    touch_png(dir.path / "SOB_M_DC-14-100-40-002.png");
    CHECK(error_kind([&] { build_manifest(dir.path); }) == "ConflictingPatientClass");
  }
  SUBCASE("missing root") {
    CHECK(error_kind([&] { build_manifest(dir.path / "nope"); }) == "MissingRoot");
  }
  SUBCASE("stable order, counts and CSV round trip") {
    touch_png(dir.path / "b" / "SOB_B_A-14-1-100-002.png");
    touch_png(dir.path / "a" / "SOB_M_DC-14-2-40-001.png");
    touch_png(dir.path / "a" / "SOB_B_A-14-1-40-001.png");
    const auto m1 = build_manifest(dir.path);
    const auto m2 = build_manifest(dir.path);
    CHECK(m1.samples() == m2.samples());
    CHECK(std::is_sorted(m1.samples().begin(), m1.samples().end(),
                         [](const auto& x, const auto& y) { return x.path.generic_string() < y.path.generic_string(); }));
    CHECK(m1.count(40, std::nullopt) == 2);
    CHECK(m1.count(std::nullopt, ClassLabel::malignant) == 1);
    std::size_t sum = 0;
    for (int mag : kMagnifications)
      for (auto c : {ClassLabel::benign, ClassLabel::malignant}) sum += m1.count(mag, c);
    CHECK(sum == m1.size());
    const auto csv = manifest_to_csv(m1);
    CHECK(csv.rfind("path,patient_id,class,subtype,magnification,sequence\n", 0) == 0);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(manifest_from_csv(csv).samples() == m1.samples());
  }
}

TEST_CASE("load_green_channel takes the green plane") {
  oracle::TempDir dir("image");
  std::vector<unsigned char> rgb(3 * 5 * 3, 0);
  rgb[3 * (1 * 5 + 2) + 0] = 10;
  rgb[3 * (1 * 5 + 2) + 1] = 255;
  rgb[3 * (1 * 5 + 2) + 2] = 3;
  write_rgb_png(dir.path / "a.png", 5, 3, rgb);
  const auto img = load_green_channel(dir.path / "a.png");
  CHECK(img.width() == 5);
  CHECK(img.height() == 3);
  CHECK(img.grid().at(2, 1) == 1.0);
  double others = 0;
  for (double v : img.grid().values()) others += v;
  CHECK(others == 1.0);

  SUBCASE("grayscale passes through scaled") {
    cv::Mat gray(2, 3, CV_8UC1, cv::Scalar(51));
    cv::imwrite((dir.path / "g.png").string(), gray);
    const auto g = load_green_channel(dir.path / "g.png");
    CHECK(g.grid().at(1, 1) == doctest::Approx(0.2));
  }
  SUBCASE("700x460 keeps its size, range stays in [0,1]") {
    std::vector<unsigned char> big(700 * 460 * 3);
    for (std::size_t i = 0; i < big.size(); ++i) big[i] = static_cast<unsigned char>(i * 7919 % 256);
    write_rgb_png(dir.path / "big.png", 700, 460, big);
    const auto b = load_green_channel(dir.path / "big.png");
    CHECK(b.width() == 700);
    CHECK(b.height() == 460);
    CHECK(std::ranges::all_of(b.grid().values(), [](double v) { return v >= 0.0 && v <= 1.0; }));
  }
  SUBCASE("luminance option") {
    const auto l = load_green_channel(dir.path / "a.png", ChannelMode::luminance);
    CHECK(l.grid().at(2, 1) == doctest::Approx((0.299 * 10 + 0.587 * 255 + 0.114 * 3) / 255.0).epsilon(1e-3));
  }
  SUBCASE("undecodable and 16-bit inputs") {
    std::ofstream(dir.path / "bad.png") << "not an image";
    CHECK(error_kind([&] { load_green_channel(dir.path / "bad.png"); }) == "DecodeError");
    cv::Mat deep(4, 4, CV_16UC3, cv::Scalar(1000, 2000, 3000));
    cv::imwrite((dir.path / "deep.png").string(), deep);
    CHECK(error_kind([&] { load_green_channel(dir.path / "deep.png"); }) == "DecodeError");
  }
}

TEST_CASE("GrayImage invariants") {
  CHECK(error_kind([] { GrayImage(Grid(1, 5)); }) == "InvalidImage");
  CHECK(error_kind([] { GrayImage(Grid(2, 2, 1.5)); }) == "InvalidImage");
  CHECK(error_kind([] { GrayImage(Grid(2, 2, std::nan(""))); }) == "InvalidImage");
  CHECK_NOTHROW(GrayImage(Grid(2, 2, 1.0)));
}

TEST_CASE("patient_split") {
  const auto m82 = synthetic_manifest(82);
  const auto plan = patient_split(m82, 0.7, 42);
  CHECK(plan.train_patients.size() == 57);
  CHECK(plan.test_patients.size() == 25);
  std::set<std::string> all(plan.train_patients.begin(), plan.train_patients.end());
  for (const auto& p : plan.test_patients) CHECK(all.insert(p).second);
  CHECK(all.size() == m82.patients().size());
  CHECK(patient_split(m82, 0.7, 42) == plan);
  CHECK_FALSE(patient_split(m82, 0.7, 43) == plan);

  const auto m2 = synthetic_manifest(2);
  const auto p2 = patient_split(m2, 0.5, 1);
  CHECK(p2.train_patients.size() == 1);
  CHECK(p2.test_patients.size() == 1);
  CHECK(p2.train_patients != p2.test_patients);

  CHECK(error_kind([&] { patient_split(m82, 1.0, 1); }) == "BadFraction");
  CHECK(error_kind([&] { patient_split(m2, 0.1, 1); }) == "TooFewPatients");
}

TEST_CASE("patient_folds") {
  const auto m82 = synthetic_manifest(82);
  auto sizes = [](const auto& folds) {
    std::multiset<std::size_t> s;
    for (const auto& f : folds) s.insert(f.size());
    return s;
  };
  const auto f3 = patient_folds(m82, 3, 9);
  CHECK(sizes(f3) == std::multiset<std::size_t>{27, 27, 28});
  const auto f10 = patient_folds(m82, 10, 9);
  CHECK(sizes(f10) == std::multiset<std::size_t>{8, 8, 8, 8, 8, 8, 8, 8, 9, 9});

  std::set<std::string> seen;
  for (const auto& f : f10)
    for (const auto& p : f) CHECK(seen.insert(p).second);
  CHECK(seen.size() == 82);
  CHECK(patient_folds(m82, 3, 9) == f3);

  CHECK(error_kind([&] { patient_folds(m82, 83, 1); }) == "BadK");
  CHECK(error_kind([&] { patient_folds(m82, 1, 1); }) == "BadK");
}
