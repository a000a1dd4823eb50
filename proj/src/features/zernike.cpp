#include "vmdtex/features/zernike.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "vmdtex/error.hpp"
#include "vmdtex/simd/kernels.hpp"

namespace vmdtex::features {

namespace {

constexpr std::array<std::int64_t, kMaxZernikeOrder + 1> kFactorials = [] {
  std::array<std::int64_t, kMaxZernikeOrder + 1> f{};
  f[0] = 1;
  for (int i = 1; i <= kMaxZernikeOrder; ++i) f[i] = f[i - 1] * i;
  return f;
}();

void check_order(int p, int q) {
  if (p < 0 || p > kMaxZernikeOrder || q < 0 || q > p || (p - q) % 2 != 0) {
    throw config_error("BadOrder", "invalid Zernike order (p=" + std::to_string(p) +
                                       ", q=" + std::to_string(q) + ")");
  }
}

// Integer coefficients of R_pq, indexed by s.
std::vector<std::int64_t> radial_coefficients(int p, int q) {
  std::vector<std::int64_t> c;
  for (int s = 0; s <= (p - q) / 2; ++s) {
    const std::int64_t denom = kFactorials[s] * kFactorials[(p + q) / 2 - s] * kFactorials[(p - q) / 2 - s];
    const std::int64_t magnitude = kFactorials[p - s] / denom;
    c.push_back(s % 2 == 0 ? magnitude : -magnitude);
  }
  return c;
}

double evaluate_radial(const std::vector<std::int64_t>& coefficients, int p, double r) {
  double value = 0.0;
  for (std::size_t s = 0; s < coefficients.size(); ++s) {
    value += static_cast<double>(coefficients[s]) * std::pow(r, p - 2 * static_cast<int>(s));
  }
  return value;
}

}  // namespace

void ZernikeSpec::validate() const {
  if (max_order < 0 || max_order > kMaxZernikeOrder) {
    throw config_error("BadOrder", "Zernike max order must lie in [0, 20]");
  }
  if (grid_side < 2) throw config_error("BadParams", "Zernike grid side must be >= 2");
}

std::vector<std::pair<int, int>> ZernikeSpec::moments() const {
  std::vector<std::pair<int, int>> m;
  for (int p = 0; p <= max_order; ++p)
    for (int q = p % 2; q <= p; q += 2) m.emplace_back(p, q);
  return m;
}

double radial_polynomial(int p, int q, double r) {
  check_order(p, q);
  if (!(r >= 0.0 && r <= 1.0)) throw config_error("BadOrder", "radius outside [0, 1]");
  return evaluate_radial(radial_coefficients(p, q), p, r);
}

ZernikeBasis::ZernikeBasis(const ZernikeSpec& spec) : spec_(spec), moments_(spec.moments()) {
  spec_.validate();
  const std::size_t n = spec_.grid_side;
  const double nd = static_cast<double>(n);
  const double norm = nd * std::numbers::sqrt2;

  std::vector<double> radius(n * n), angle(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    const double y = (2.0 * static_cast<double>(k) + 1.0 - nd) / norm;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = (2.0 * static_cast<double>(i) + 1.0 - nd) / norm;
      radius[k * n + i] = std::min(1.0, std::hypot(x, y));
      angle[k * n + i] = std::atan2(y, x);
    }
  }

  basis_re_.reserve(moments_.size());
  basis_im_.reserve(moments_.size());
  for (const auto& [p, q] : moments_) {
    const auto coefficients = radial_coefficients(p, q);
    const double scale = 2.0 * (p + 1) / (std::numbers::pi * nd * nd);
    std::vector<double> re(n * n), im(n * n);
    for (std::size_t i = 0; i < n * n; ++i) {
      const double radial = scale * evaluate_radial(coefficients, p, radius[i]);
      re[i] = radial * std::cos(q * angle[i]);
      im[i] = -radial * std::sin(q * angle[i]);
    }
    basis_re_.push_back(std::move(re));
    basis_im_.push_back(std::move(im));
  }
}

std::vector<double> ZernikeBasis::magnitudes(const Grid& image) const {
  const std::size_t n = spec_.grid_side;
  if (image.width() != n || image.height() != n) {
    throw data_error("ShapeMismatch", "Zernike input must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  const auto& k = simd::kernels();
  const double* f = image.values().data();
  std::vector<double> out(moments_.size());
  for (std::size_t m = 0; m < moments_.size(); ++m) {
    const double re = k.dot(f, basis_re_[m].data(), n * n);
    const double im = k.dot(f, basis_im_[m].data(), n * n);
    out[m] = std::hypot(re, im);
  }
  return out;
}

std::map<std::pair<int, int>, double> zernike_magnitudes(const Grid& image, const ZernikeSpec& spec) {
  const ZernikeBasis basis(spec);
  const auto values = basis.magnitudes(image);
  std::map<std::pair<int, int>, double> out;
  for (std::size_t m = 0; m < values.size(); ++m) out[basis.moments()[m]] = values[m];
  return out;
}

}  // namespace vmdtex::features
