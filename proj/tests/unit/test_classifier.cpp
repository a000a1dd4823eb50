#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "vmdtex/classifier/grid_search.hpp"
#include "vmdtex/classifier/lssvm.hpp"
#include "vmdtex/classifier/model_io.hpp"
#include "vmdtex/error.hpp"

using namespace vmdtex;
using namespace vmdtex::classifier;
using vmdtex::selection::FeatureMatrix;

namespace {

std::string kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return "";
}

struct Blobs {
  std::vector<double> x;
  std::vector<int> y;
};

/// Two isotropic 2D Gaussians centred at (+-3, 0), unit variance.
Blobs blobs(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  Blobs b;
  for (std::size_t i = 0; i < n; ++i) {
    const int y = i % 2 ? 1 : -1;
    b.x.push_back(3.0 * y + nd(gen));
    b.x.push_back(nd(gen));
    b.y.push_back(y);
  }
  return b;
}

FeatureMatrix as_matrix(const Blobs& b) { return FeatureMatrix(b.y.size(), 2, b.x, {"u", "v"}, b.y); }

double accuracy(const LsSvmModel& m, const Blobs& b) {
  std::size_t ok = 0;
  for (std::size_t i = 0; i < b.y.size(); ++i) ok += predict(m, {b.x.data() + 2 * i, 2}).label == b.y[i];
  return static_cast<double>(ok) / static_cast<double>(b.y.size());
}

}  // namespace

TEST_CASE("RBF kernel") {
  const std::vector<double> a{0, 0}, b{3, 4}, c{1};
  CHECK(rbf_kernel(a, a, 2.0) == 1.0);
  CHECK(rbf_kernel(a, b, 1.0) == doctest::Approx(std::exp(-12.5)).epsilon(1e-14));
  CHECK(rbf_kernel(a, b, 5.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
  CHECK(rbf_kernel(a, b, 2.0) == rbf_kernel(b, a, 2.0));
  CHECK(kind_of([&] { rbf_kernel(a, c, 1.0); }) == "DimensionMismatch");
  CHECK(kind_of([&] { rbf_kernel(a, b, 0.0); }) == "BadParams");
}

TEST_CASE("two-point problem against a dense solve") {
  const std::vector<double> x{-1.0, 1.0};
  const std::vector<int> y{-1, 1};
  const double gamma = 10.0, sigma = 1.0;
  const auto m = train_lssvm(x, 1, y, gamma, sigma);

  const double k12 = std::exp(-2.0);
  std::vector<std::vector<double>> a{{0, -1, 1}, {-1, 1 + 1 / gamma, -k12}, {1, -k12, 1 + 1 / gamma}};
  const auto sol = oracle::gauss_solve(a, {0, 1, 1});
  CHECK(std::abs(m.bias - sol[0]) <= 1e-10);
  CHECK(std::abs(m.alphas[0] - sol[1]) <= 1e-10);
  CHECK(std::abs(m.alphas[1] - sol[2]) <= 1e-10);
  CHECK(std::abs(m.bias) <= 1e-12);
  CHECK(m.kkt_residual <= kKktTolerance);

  const std::vector<double> zero{0.0}, lo{-0.9}, hi{0.9};
  CHECK(std::abs(predict(m, zero).score) <= 1e-12);
  CHECK(predict(m, lo).label == -1);
  CHECK(predict(m, hi).label == 1);
}

TEST_CASE("a zero score is labelled malignant") {
  LsSvmModel m;
  m.dim = 1;
  m.support_inputs = {0.0};
  m.support_labels = {1};
  m.alphas = {0.0};
  const std::vector<double> x{5.0};
  CHECK(predict(m, x).score == 0.0);
  CHECK(predict(m, x).label == 1);
}

TEST_CASE("separated blobs") {
  const auto train = blobs(200, 1), test = blobs(400, 2);
  const auto m = train_lssvm(as_matrix(train), 10.0, 2.0);
  CHECK(accuracy(m, test) >= 0.99);
  CHECK(m.rows() == 200);

  SUBCASE("row order does not matter") {
    std::vector<std::size_t> perm(200);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), std::mt19937_64(5));
    const auto pm = train_lssvm(as_matrix(train).select_rows(perm), 10.0, 2.0);
    for (std::size_t i = 0; i < 50; ++i) {
      const std::span<const double> q{test.x.data() + 2 * i, 2};
      CHECK(predict(pm, q).score == doctest::Approx(predict(m, q).score).epsilon(1e-9).scale(1e-9));
    }
  }
  SUBCASE("JSON round trip") {
    const auto j = model_to_json(m, 77);
    CHECK(j.at("seed") == 77);
    CHECK(j.at("class_map").at("1") == "malignant");
    const auto back = model_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.dim == 2);
    CHECK(back.support_labels == m.support_labels);
    for (std::size_t i = 0; i < m.alphas.size(); ++i) CHECK(std::abs(back.alphas[i] - m.alphas[i]) <= 1e-12);
    for (std::size_t i = 0; i < 50; ++i) {
      const std::span<const double> q{test.x.data() + 2 * i, 2};
      CHECK(std::abs(predict(back, q).score - predict(m, q).score) <= 1e-12);
    }
    CHECK(kind_of([] { model_from_json(nlohmann::json::object()); }) == "BadModelFile");
    auto broken = nlohmann::json::parse(j.dump());
    broken["alphas"].erase(0);
    CHECK(kind_of([&] { model_from_json(broken); }) == "BadModelFile");
  }
  SUBCASE("training fit error does not grow with gamma") {
    double prev = INFINITY;
    for (double g : {0.1, 1.0, 10.0, 100.0}) {
      const auto mg = train_lssvm(as_matrix(train), g, 2.0);
      double sse = 0;
      for (std::size_t i = 0; i < 200; ++i) {
        const double e = 1.0 - train.y[i] * predict(mg, {train.x.data() + 2 * i, 2}).score;
        sse += e * e;
      }
      CHECK(sse <= prev + 1e-9);
      prev = sse;
    }
  }
}

TEST_CASE("embedded preprocessing") {
  const auto train = blobs(60, 3);
  auto m = train_lssvm(as_matrix(train), 10.0, 2.0);
  m.feature_names = {"u", "junk", "v"};
  m.feature_mask = {true, false, true};
  m.norm_stats.means = {1.0, -1.0};
  m.norm_stats.scales = {2.0, 4.0};
  const std::vector<double> raw{5.0, 123.0, 3.0};
  const auto z = to_model_space(m, raw);
  CHECK(z == std::vector<double>{2.0, 1.0});
  CHECK(predict_raw(m, raw).score == predict(m, z).score);
}

TEST_CASE("kernel matrix is positive semidefinite") {
  const auto b = blobs(40, 9);
  Eigen::MatrixXd k(40, 40);
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 40; ++j)
      k(i, j) = rbf_kernel({b.x.data() + 2 * i, 2}, {b.x.data() + 2 * j, 2}, 1.5);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
  CHECK(es.eigenvalues().minCoeff() >= -1e-10);
}

TEST_CASE("training input checks") {
  const std::vector<double> x{0, 1, 2};
  const std::vector<int> same{1, 1, 1}, y{1, -1, 1};
  CHECK(kind_of([&] { train_lssvm(x, 1, same, 1.0, 1.0); }) == "SingleClass");
  CHECK(kind_of([&] { train_lssvm(x, 1, y, 0.0, 1.0); }) == "BadParams");
  CHECK(kind_of([&] { train_lssvm(x, 1, y, 1.0, -1.0); }) == "BadParams");
}

TEST_CASE("stratified inner folds") {
  std::vector<int> y(23, -1);
  for (std::size_t i = 0; i < 10; ++i) y[i * 2] = 1;
  const auto f = stratified_row_folds(y, 5, 4);
  CHECK(f == stratified_row_folds(y, 5, 4));
  for (std::size_t k = 0; k < 5; ++k) {
    std::size_t pos = 0, neg = 0;
    for (std::size_t i = 0; i < y.size(); ++i)
      if (f[i] == k) (y[i] == 1 ? pos : neg)++;
    CHECK(pos == 2);
    CHECK((neg == 2 || neg == 3));
  }
}

TEST_CASE("grid search") {
  const auto m = as_matrix(blobs(100, 11));

  SUBCASE("single cell") {
    const auto r = grid_search(m, {.gammas = {10.0}, .sigmas = {2.0}, .inner_folds = 4, .seed = 1});
    CHECK(r.gamma == 10.0);
    CHECK(r.sigma == 2.0);
    CHECK(r.table.size() == 1);
    CHECK(r.accuracy >= 0.95);
  }
  SUBCASE("full grid is deterministic and thread independent") {
    GridParams p;
    p.seed = 3;
    const auto a = grid_search(m, p);
    p.jobs = 4;
    const auto b = grid_search(m, p);
    CHECK(a.table.size() == 30);
    CHECK(a.gamma == b.gamma);
    CHECK(a.sigma == b.sigma);
    CHECK(grid_table_to_json(a) == grid_table_to_json(b));
    CHECK(a.accuracy >= 0.95);
    for (const auto& cell : a.table)
      if (cell.accuracy) CHECK(*cell.accuracy <= a.accuracy);
    CHECK(a.table[0].gamma == 0.1);
    CHECK(a.table[1].sigma == 1.0);
  }
  SUBCASE("ties go to the smaller gamma and sigma") {
    // Perfectly separable, so every reasonable cell scores 1.0.
    std::vector<double> x;
    std::vector<int> y;
    for (int i = 0; i < 40; ++i) {
      y.push_back(i % 2 ? 1 : -1);
      x.push_back(10.0 * y.back() + 0.01 * i);
    }
    const FeatureMatrix sep(40, 1, x, {"u"}, y);
    const auto r = grid_search(sep, {.gammas = {1.0, 10.0}, .sigmas = {1.0, 2.0}, .inner_folds = 4});
    CHECK(r.accuracy == 1.0);
    CHECK(r.gamma == 1.0);
    CHECK(r.sigma == 1.0);
  }
  SUBCASE("bad grid") {
    CHECK(kind_of([&] { grid_search(m, {.gammas = {}}); }) == "BadParams");
    CHECK(kind_of([&] { grid_search(m, {.inner_folds = 1}); }) == "BadParams");
  }
}
