#include "vmdtex/vmd/fft.hpp"

#include <cmath>
#include <numbers>

#include "vmdtex/error.hpp"

namespace vmdtex::spectral {

namespace {

constexpr std::size_t kMaxDirectRadix = 64;

// Plain arithmetic; std::complex operator* takes the slow Annex G path.
inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

std::vector<std::size_t> factorize(std::size_t n) {
  std::vector<std::size_t> factors;
  for (std::size_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      factors.push_back(p);
      n /= p;
    }
  if (n > 1) factors.push_back(n);
  return factors;
}

std::vector<Complex> make_twiddles(std::size_t n, double sign) {
  std::vector<Complex> t(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    t[j] = {std::cos(angle), std::sin(angle)};
  }
  return t;
}

}  // namespace

struct Fft1d::Bluestein {
  std::size_t padded = 0;
  std::unique_ptr<Fft1d> inner;
  std::vector<Complex> chirp_fwd;  // exp(-i pi j^2 / n)
  std::vector<Complex> kernel_fwd_hat;
  std::vector<Complex> kernel_inv_hat;

  Bluestein(std::size_t n) {
    padded = 1;
    while (padded < 2 * n - 1) padded <<= 1;
    inner = std::make_unique<Fft1d>(padded);
    chirp_fwd.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      // j^2 mod 2n keeps the angle argument small and exact.
      const auto jj = static_cast<double>((j * j) % (2 * n));
      const double angle = -std::numbers::pi * jj / static_cast<double>(n);
      chirp_fwd[j] = {std::cos(angle), std::sin(angle)};
    }
    kernel_fwd_hat = kernel(n, false);
    kernel_inv_hat = kernel(n, true);
  }

  std::vector<Complex> kernel(std::size_t n, bool inverse) const {
    std::vector<Complex> b(padded, Complex{});
    for (std::size_t j = 0; j < n; ++j) {
      const Complex c = inverse ? chirp_fwd[j] : std::conj(chirp_fwd[j]);
      b[j] = c;
      if (j > 0) b[padded - j] = c;
    }
    inner->forward(b);
    return b;
  }

  void run(std::span<Complex> data, bool inverse) const {
    const std::size_t n = data.size();
    std::vector<Complex> a(padded, Complex{});
    for (std::size_t j = 0; j < n; ++j) {
      const Complex c = inverse ? std::conj(chirp_fwd[j]) : chirp_fwd[j];
      a[j] = mul(data[j], c);
    }
    inner->forward(a);
    const auto& b = inverse ? kernel_inv_hat : kernel_fwd_hat;
    for (std::size_t i = 0; i < padded; ++i) a[i] = mul(a[i], b[i]);
    inner->backward(a);
    const double scale = 1.0 / static_cast<double>(padded);
    for (std::size_t k = 0; k < n; ++k) {
      const Complex c = inverse ? std::conj(chirp_fwd[k]) : chirp_fwd[k];
      data[k] = mul(a[k], c) * scale;
    }
  }
};

Fft1d::Fft1d(std::size_t n) : n_(n) {
  if (n == 0) throw data_error("InvalidImage", "transform length must be positive");
  radices_ = factorize(n);
  if (!radices_.empty() && radices_.back() > kMaxDirectRadix) {
    bluestein_ = std::make_unique<Bluestein>(n);
    radices_.clear();
    return;
  }
  twiddles_fwd_ = make_twiddles(n, -1.0);
  twiddles_inv_ = make_twiddles(n, 1.0);
}

Fft1d::~Fft1d() = default;
Fft1d::Fft1d(Fft1d&&) noexcept = default;
Fft1d& Fft1d::operator=(Fft1d&&) noexcept = default;

void Fft1d::forward(std::span<Complex> data) const { transform(data, false); }
void Fft1d::backward(std::span<Complex> data) const { transform(data, true); }

void Fft1d::transform(std::span<Complex> data, bool inverse) const {
  if (data.size() != n_) throw data_error("ShapeMismatch", "FFT length mismatch");
  if (n_ == 1) return;
  if (bluestein_) {
    bluestein_->run(data, inverse);
    return;
  }
  std::vector<Complex> input(data.begin(), data.end());
  radix_transform(data.data(), input.data(), inverse);
}

void Fft1d::radix_transform(Complex* out, const Complex* in, bool inverse) const {
  recurse(out, in, 1, 0, inverse ? twiddles_inv_ : twiddles_fwd_);
}

// Decimation in time: `out` receives the length-(n/stride) DFT of in[0], in[stride], ...
void Fft1d::recurse(Complex* out, const Complex* in, std::size_t stride, std::size_t level,
                    const std::vector<Complex>& tw) const {
  const std::size_t p = radices_[level];
  const std::size_t m = n_ / (stride * p);

  if (m == 1) {
    for (std::size_t q = 0; q < p; ++q) out[q] = in[q * stride];
  } else {
    for (std::size_t q = 0; q < p; ++q) recurse(out + q * m, in + q * stride, stride * p, level + 1, tw);
  }

  if (p == 2) {
    for (std::size_t k = 0; k < m; ++k) {
      const Complex t = mul(out[k + m], tw[k * stride]);
      out[k + m] = out[k] - t;
      out[k] = out[k] + t;
    }
    return;
  }

  Complex scratch[kMaxDirectRadix];
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t q = 0; q < p; ++q) scratch[q] = out[u + q * m];
    for (std::size_t q1 = 0; q1 < p; ++q1) {
      const std::size_t k = u + q1 * m;
      Complex acc = scratch[0];
      std::size_t index = 0;
      for (std::size_t q = 1; q < p; ++q) {
        index += stride * k;
        index %= n_;
        acc += mul(scratch[q], tw[index]);
      }
      out[k] = acc;
    }
  }
}

double Spectrum2D::frequency(std::size_t k, std::size_t n) noexcept {
  const auto signed_k = k < (n + 1) / 2 ? static_cast<double>(k)
                                        : static_cast<double>(k) - static_cast<double>(n);
  return signed_k / static_cast<double>(n);
}

namespace {

void transform_2d(std::span<Complex> data, std::size_t width, std::size_t height, bool inverse) {
  const Fft1d rows(width);
  const Fft1d cols(height);
  for (std::size_t y = 0; y < height; ++y) {
    auto row = data.subspan(y * width, width);
    inverse ? rows.backward(row) : rows.forward(row);
  }
  std::vector<Complex> column(height);
  for (std::size_t x = 0; x < width; ++x) {
    for (std::size_t y = 0; y < height; ++y) column[y] = data[y * width + x];
    inverse ? cols.backward(column) : cols.forward(column);
    for (std::size_t y = 0; y < height; ++y) data[y * width + x] = column[y];
  }
}

}  // namespace

Spectrum2D forward_dft2(const Grid& grid) {
  if (grid.width() < 2 || grid.height() < 2) {
    throw data_error("InvalidImage", "2D transform needs at least 2 bins per axis");
  }
  Spectrum2D spectrum(grid.width(), grid.height());
  auto coeffs = spectrum.coefficients();
  const auto values = grid.values();
  for (std::size_t i = 0; i < values.size(); ++i) coeffs[i] = {values[i], 0.0};
  transform_2d(coeffs, grid.width(), grid.height(), false);
  return spectrum;
}

std::vector<Complex> inverse_dft2_complex(const Spectrum2D& spectrum) {
  if (spectrum.width() < 2 || spectrum.height() < 2) {
    throw data_error("InvalidImage", "2D transform needs at least 2 bins per axis");
  }
  std::vector<Complex> data(spectrum.coefficients().begin(), spectrum.coefficients().end());
  transform_2d(data, spectrum.width(), spectrum.height(), true);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& c : data) c *= scale;
  return data;
}

Grid inverse_dft2(const Spectrum2D& spectrum) {
  const auto data = inverse_dft2_complex(spectrum);
  Grid grid(spectrum.width(), spectrum.height());
  auto values = grid.values();
  for (std::size_t i = 0; i < data.size(); ++i) values[i] = data[i].real();
  return grid;
}

}  // namespace vmdtex::spectral
