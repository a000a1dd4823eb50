#include <doctest.h>

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vmdtex/error.hpp"
#include "vmdtex/selection/matrix.hpp"
#include "vmdtex/selection/relieff.hpp"
#include "vmdtex/selection/significance.hpp"
#include "vmdtex/selection/zscore.hpp"

using namespace vmdtex;
using namespace vmdtex::selection;

namespace {

std::string kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return "";
}

std::vector<std::string> names_for(std::size_t d) {
  std::vector<std::string> n;
  for (std::size_t j = 0; j < d; ++j) n.push_back("f" + std::to_string(j));
  return n;
}

FeatureMatrix make(const std::vector<std::vector<double>>& rows, const std::vector<int>& labels) {
  std::vector<double> data;
  for (const auto& r : rows) data.insert(data.end(), r.begin(), r.end());
  return FeatureMatrix(rows.size(), rows[0].size(), data, names_for(rows[0].size()), labels);
}

/// Column 0 separates the classes, column 1 is constant, columns 2.. are noise.
std::pair<std::vector<std::vector<double>>, std::vector<int>> separable(std::size_t m, std::size_t d,
                                                                        std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  std::vector<std::vector<double>> x(m, std::vector<double>(d));
  std::vector<int> y(m);
  for (std::size_t i = 0; i < m; ++i) {
    y[i] = i % 2 ? 1 : -1;
    x[i][0] = 3.0 * y[i] + 0.3 * nd(gen);
    x[i][1] = 4.2;
    for (std::size_t j = 2; j < d; ++j) x[i][j] = nd(gen);
  }
  return {x, y};
}

}  // namespace

TEST_CASE("feature matrix invariants") {
  CHECK(kind_of([] { FeatureMatrix(2, 2, {1, 2, 3}, {"a", "b"}, {1, -1}); }) == "BadMatrix");
  CHECK(kind_of([] { FeatureMatrix(1, 2, {1, 2}, {"a", "a"}, {1}); }) == "BadMatrix");
  CHECK(kind_of([] { FeatureMatrix(1, 2, {1, NAN}, {"a", "b"}, {1}); }) == "BadMatrix");
  CHECK(kind_of([] { FeatureMatrix(1, 2, {1, 2}, {"a", "b"}, {0}); }) == "BadMatrix");

  const FeatureMatrix m(3, 2, {1, 10, 2, 20, 3, 60}, {"a", "b"}, {1, -1, 1});
  const auto st = m.column_stats();
  CHECK(st[0].mean == 2.0);
  CHECK(st[0].stddev == doctest::Approx(std::sqrt(2.0 / 3.0)));
  CHECK(st[1].min == 10.0);
  CHECK(st[1].max == 60.0);
  const std::vector<std::size_t> idx{2, 0};
  const auto r = m.select_rows(idx);
  CHECK(r.at(0, 1) == 60.0);
  CHECK(r.labels() == std::vector<int>{1, 1});
  const auto c = m.select_columns({false, true});
  CHECK(c.cols() == 1);
  CHECK(c.names() == std::vector<std::string>{"b"});
  CHECK(c.at(1, 0) == 20.0);
}

TEST_CASE("ReliefF") {
  const auto [x, y] = separable(60, 6, 1);
  const auto m = make(x, y);
  const auto r = relieff(m, {.k_neighbors = 5});

  CHECK(r.weights[1] == 0.0);
  CHECK(r.order[0] == 0);
  CHECK(*std::ranges::max_element(r.weights) == r.weights[0]);
  CHECK(r.selected_mask[0]);
  CHECK_FALSE(r.selected_mask[1]);
  for (double w : r.weights) {
    CHECK(w >= -1.0);
    CHECK(w <= 1.0);
  }

  SUBCASE("matches the textbook formulation") {
    const auto ref = oracle::reference_relieff(x, y, 5);
    for (std::size_t j = 0; j < ref.size(); ++j) CHECK(r.weights[j] == doctest::Approx(ref[j]).epsilon(1e-12).scale(1e-14));
  }
  SUBCASE("independent of thread count") {
    CHECK(relieff(m, {.k_neighbors = 5, .jobs = 4}).weights == r.weights);
  }
  SUBCASE("invariant to positive column scaling and shifts") {
    auto xs = x;
    for (auto& row : xs) {
      row[0] = 100.0 * row[0] + 7.0;
      row[3] = 0.001 * row[3] - 2.0;
    }
    const auto rs = relieff(make(xs, y), {.k_neighbors = 5});
    for (std::size_t j = 0; j < r.weights.size(); ++j)
      CHECK(rs.weights[j] == doctest::Approx(r.weights[j]).epsilon(1e-9).scale(1e-12));
  }
  SUBCASE("duplicating every row keeps the separating feature on top") {
    auto xd = x;
    auto yd = y;
    xd.insert(xd.end(), x.begin(), x.end());
    yd.insert(yd.end(), y.begin(), y.end());
    const auto rd = relieff(make(xd, yd), {.k_neighbors = 5});
    CHECK(rd.order[0] == 0);
    CHECK(rd.weights[1] == 0.0);
  }
  SUBCASE("seeded subsample") {
    const ReliefParams p{.k_neighbors = 5, .samples = 20, .seed = 9};
    CHECK(relieff(m, p).weights == relieff(m, p).weights);
    CHECK(relieff(m, p).order[0] == 0);
  }
  SUBCASE("parameter checks") {
    CHECK(kind_of([&] { relieff(m, {.k_neighbors = 0}); }) == "BadK");
    CHECK(kind_of([&] { relieff(m, {.k_neighbors = 30}); }) == "BadK");
    const std::vector<int> ones(y.size(), 1);
    CHECK(kind_of([&] { relieff(make(x, ones), {}); }) == "SingleClass");
  }
}

TEST_CASE("ReliefF weight of an irrelevant feature is near zero") {
  const auto [x, y] = separable(500, 3, 4);
  const auto r = relieff(make(x, y), {.k_neighbors = 10});
  CHECK(std::abs(r.weights[2]) <= 0.05);
}

TEST_CASE("rank order breaks ties by index") {
  CHECK(rank_order({0.1, 0.5, 0.1, 0.5, -1.0}) == std::vector<std::size_t>{1, 3, 0, 2, 4});
}

TEST_CASE("Welch t-test") {
  const std::vector<double> a{1.1, 2.3, 0.7, 1.9, 2.2, 1.4}, b{3.0, 2.5, 4.1, 3.3, 2.9};
  const auto w = welch_t_test(a, b);
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / 6, mb = std::accumulate(b.begin(), b.end(), 0.0) / 5;
  double va = 0, vb = 0;
  for (double v : a) va += (v - ma) * (v - ma);
  for (double v : b) vb += (v - mb) * (v - mb);
  va /= 5;
  vb /= 4;
  const double se2 = va / 6 + vb / 5;
  const double t = (ma - mb) / std::sqrt(se2);
  const double df = se2 * se2 / ((va / 6) * (va / 6) / 5 + (vb / 5) * (vb / 5) / 4);
  CHECK(w.t == doctest::Approx(t).epsilon(1e-12));
  CHECK(w.df == doctest::Approx(df).epsilon(1e-12));
  CHECK(w.p == doctest::Approx(boost::math::ibeta(df / 2, 0.5, df / (df + t * t))).epsilon(1e-10));

  const std::vector<double> c{5.0, 5.0, 5.0}, d{5.0, 5.0}, e{6.0, 6.0}, one{1.0};
  CHECK(welch_t_test(c, d).p == 1.0);
  CHECK(welch_t_test(c, e).p == 0.0);
  CHECK(welch_t_test(one, a).p == 1.0);
  CHECK(welch_t_test(a, a).p == doctest::Approx(1.0));
}

TEST_CASE("significance filter") {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> nd;
  std::vector<std::vector<double>> x(40, std::vector<double>(3));
  std::vector<int> y(40);
  for (std::size_t i = 0; i < 40; ++i) {
    y[i] = i < 20 ? -1 : 1;
    x[i][0] = (i < 20 ? 0.0 : 10.0) + nd(gen);
    x[i][1] = static_cast<double>(i % 20);  // same values in both classes
    x[i][2] = nd(gen);
  }
  const auto m = make(x, y);
  const auto f = significance_filter(m, relieff(m, {.k_neighbors = 5}));
  CHECK(f.selected_mask[0]);
  CHECK_FALSE(f.selected_mask[1]);
  CHECK(f.p_values[1] == doctest::Approx(1.0));
  CHECK(f.p_values[0] < 1e-10);
  CHECK_FALSE(f.fallback);

  SUBCASE("nothing significant falls back to the top weights") {
    auto ranked = relieff(m, {.k_neighbors = 5});
    const auto g = significance_filter(m, ranked, {.p_threshold = 0.0, .fallback_count = 2});
    CHECK(g.fallback);
    CHECK(g.selected_count() == 2);
    CHECK(g.selected_mask[ranked.order[0]]);
    CHECK(g.selected_mask[ranked.order[1]]);
  }
  SUBCASE("report") {
    const auto j = selection_report(f, m.names());
    CHECK(j.at("selected") == nlohmann::json::array({"f0"}));
    CHECK(j.at("weights").size() == 3);
    CHECK(j.at("fallback") == false);
  }
}

TEST_CASE("z-score") {
  const FeatureMatrix train(4, 2, {1, 5, 3, 5, 5, 5, 7, 5}, {"a", "b"}, {1, -1, 1, -1});
  const auto st = zscore_fit(train);
  CHECK(st.means == std::vector<double>{4.0, 5.0});
  CHECK(st.scales[0] == doctest::Approx(std::sqrt(5.0)));
  CHECK(st.scales[1] == 1.0);
  const auto z = zscore_apply(st, train);
  CHECK(z.at(0, 0) == doctest::Approx(-3.0 / std::sqrt(5.0)));
  CHECK(z.at(2, 1) == 0.0);
  const std::vector<double> row{9.0, 6.0};
  const auto zr = zscore_apply(st, row);
  CHECK(zr[0] == doctest::Approx(5.0 / std::sqrt(5.0)));
  CHECK(zr[1] == 1.0);
  const std::vector<double> short_row{1.0};
  CHECK(kind_of([&] { zscore_apply(st, short_row); }) == "DimensionMismatch");

  SUBCASE("statistics depend only on the training rows") {
    const FeatureMatrix test_a(1, 2, {100, 100}, {"a", "b"}, {1});
    const FeatureMatrix test_b(1, 2, {-3, 0}, {"a", "b"}, {-1});
    const auto s1 = zscore_fit(train);
    zscore_apply(s1, test_a);
    zscore_apply(s1, test_b);
    CHECK(zscore_fit(train).means == s1.means);
    CHECK(zscore_fit(train).scales == s1.scales);
  }
}
