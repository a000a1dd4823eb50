#include "vmdtex/classifier/lssvm.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <cmath>

#include "kkt.hpp"
#include "vmdtex/error.hpp"
#include "vmdtex/simd/kernels.hpp"

namespace vmdtex::classifier {

double rbf_kernel(std::span<const double> x, std::span<const double> z, double sigma) {
  if (x.size() != z.size()) throw data_error("DimensionMismatch", "kernel arguments differ in length");
  if (!(sigma > 0.0)) throw config_error("BadParams", "sigma must be > 0");
  const double d2 = simd::kernels().squared_distance(x.data(), z.data(), x.size());
  return std::exp(-d2 / (2.0 * sigma * sigma));
}

namespace detail {

std::vector<double> pairwise_squared_distances(std::span<const double> rows, std::size_t dim) {
  const std::size_t n = dim == 0 ? 0 : rows.size() / dim;
  const auto& kern = simd::kernels();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = kern.squared_distance(rows.data() + i * dim, rows.data() + j * dim, dim);
      d[i * n + j] = v;
      d[j * n + i] = v;
    }
  }
  return d;
}

KktSolution solve_kkt(std::span<const double> sq_dist, std::span<const int> labels, double gamma,
                      double sigma) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y[i] = labels[static_cast<std::size_t>(i)];
  Eigen::MatrixXd h(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      h(i, j) = y[i] * y[j] * std::exp(-sq_dist[static_cast<std::size_t>(i * n + j)] * inv2s2);
    }
    h(i, i) += 1.0 / gamma;
  }
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);

  Eigen::VectorXd eta, nu;
  Eigen::LLT<Eigen::MatrixXd> llt(h);
  if (llt.info() == Eigen::Success) {
    eta = llt.solve(y);
    nu = llt.solve(ones);
  } else {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
    if (ldlt.info() != Eigen::Success) throw numerical_error("IllConditioned", "LS-SVM factorization failed");
    eta = ldlt.solve(y);
    nu = ldlt.solve(ones);
  }
  const double denom = y.dot(eta);
  if (!std::isfinite(denom) || denom == 0.0) {
    throw numerical_error("IllConditioned", "LS-SVM Schur complement is singular");
  }
  KktSolution s;
  s.bias = y.dot(nu) / denom;
  const Eigen::VectorXd alpha = nu - s.bias * eta;

  // Residual of the full bordered system against the right-hand side [0; 1].
  const double top = y.dot(alpha);
  const Eigen::VectorXd body = y * s.bias + h * alpha - ones;
  s.residual = std::sqrt(top * top + body.squaredNorm()) / std::sqrt(static_cast<double>(n));
  if (!(s.residual <= kKktTolerance)) {
    throw numerical_error("IllConditioned",
                          "LS-SVM KKT residual " + std::to_string(s.residual) + " exceeds tolerance");
  }
  s.alphas.assign(alpha.data(), alpha.data() + n);
  return s;
}

}  // namespace detail

LsSvmModel train_lssvm(std::span<const double> rows, std::size_t dim, std::span<const int> labels,
                       double gamma, double sigma) {
  if (!(gamma > 0.0) || !(sigma > 0.0)) throw config_error("BadParams", "gamma and sigma must be > 0");
  if (dim == 0 || rows.size() != labels.size() * dim) {
    throw data_error("DimensionMismatch", "training rows do not match labels");
  }
  const bool has_pos = std::ranges::find(labels, 1) != labels.end();
  const bool has_neg = std::ranges::find(labels, -1) != labels.end();
  if (!has_pos || !has_neg) throw data_error("SingleClass", "LS-SVM training needs both classes");
  if (!std::ranges::all_of(labels, [](int v) { return v == 1 || v == -1; })) {
    throw data_error("BadMatrix", "labels must be +1 or -1");
  }

  const auto dist = detail::pairwise_squared_distances(rows, dim);
  auto sol = detail::solve_kkt(dist, labels, gamma, sigma);

  LsSvmModel model;
  model.dim = dim;
  model.support_inputs.assign(rows.begin(), rows.end());
  model.support_labels.assign(labels.begin(), labels.end());
  model.alphas = std::move(sol.alphas);
  model.bias = sol.bias;
  model.gamma = gamma;
  model.sigma = sigma;
  model.kkt_residual = sol.residual;
  return model;
}

LsSvmModel train_lssvm(const selection::FeatureMatrix& train, double gamma, double sigma) {
  return train_lssvm(train.data(), train.cols(), train.labels(), gamma, sigma);
}

Prediction predict(const LsSvmModel& model, std::span<const double> x) {
  if (x.size() != model.dim) throw data_error("DimensionMismatch", "input width does not match the model");
  const auto& kern = simd::kernels();
  const double inv2s2 = 1.0 / (2.0 * model.sigma * model.sigma);
  double score = model.bias;
  for (std::size_t i = 0; i < model.rows(); ++i) {
    const double d2 = kern.squared_distance(model.support_inputs.data() + i * model.dim, x.data(), model.dim);
    score += model.alphas[i] * model.support_labels[i] * std::exp(-d2 * inv2s2);
  }
  return {score >= 0.0 ? 1 : -1, score};
}

std::vector<double> to_model_space(const LsSvmModel& model, std::span<const double> raw) {
  if (model.feature_mask.empty()) return {raw.begin(), raw.end()};
  if (raw.size() != model.feature_mask.size()) {
    throw data_error("DimensionMismatch", "raw feature width does not match the model mask");
  }
  std::vector<double> picked;
  for (std::size_t j = 0; j < raw.size(); ++j)
    if (model.feature_mask[j]) picked.push_back(raw[j]);
  if (model.norm_stats.means.empty()) return picked;
  return selection::zscore_apply(model.norm_stats, picked);
}

Prediction predict_raw(const LsSvmModel& model, std::span<const double> raw) {
  return predict(model, to_model_space(model, raw));
}

}  // namespace vmdtex::classifier
