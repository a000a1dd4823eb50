#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "vmdtex/dataset/image.hpp"

namespace vmdtex::spectral {

using Complex = std::complex<double>;

/// Exact-length 1D DFT plan. Mixed-radix Cooley-Tukey over the length's prime
/// factors; lengths with a prime factor above 64 go through Bluestein's
/// chirp-z convolution on a power-of-two plan. Plans are immutable and may be
/// shared between threads.
class Fft1d {
 public:
  explicit Fft1d(std::size_t n);
  ~Fft1d();
  Fft1d(Fft1d&&) noexcept;
  Fft1d& operator=(Fft1d&&) noexcept;

  std::size_t size() const noexcept { return n_; }

  /// In place, X_k = sum_j x_j exp(-2 pi i jk / n). Unnormalized.
  void forward(std::span<Complex> data) const;
  /// In place, x_j = sum_k X_k exp(+2 pi i jk / n). Unnormalized.
  void backward(std::span<Complex> data) const;

 private:
  struct Bluestein;

  void transform(std::span<Complex> data, bool inverse) const;
  void radix_transform(Complex* out, const Complex* in, bool inverse) const;
  void recurse(Complex* out, const Complex* in, std::size_t stride, std::size_t level,
               const std::vector<Complex>& twiddles) const;

  std::size_t n_ = 0;
  std::vector<std::size_t> radices_;   // p_0, p_1, ... with product n
  std::vector<Complex> twiddles_fwd_;  // exp(-2 pi i j / n)
  std::vector<Complex> twiddles_inv_;
  std::unique_ptr<Bluestein> bluestein_;
};

/// Spectrum of a real grid, row-major `height` x `width` complex bins.
/// Bin (kx, ky) has normalized frequency (frequency(kx, width), frequency(ky, height)).
class Spectrum2D {
 public:
  Spectrum2D() = default;
  Spectrum2D(std::size_t width, std::size_t height)
      : width_(width), height_(height), coefficients_(width * height) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::span<Complex> coefficients() noexcept { return coefficients_; }
  std::span<const Complex> coefficients() const noexcept { return coefficients_; }
  Complex& at(std::size_t kx, std::size_t ky) { return coefficients_[ky * width_ + kx]; }
  Complex at(std::size_t kx, std::size_t ky) const { return coefficients_[ky * width_ + kx]; }

  /// Normalized frequency of bin k on an axis of n bins, in cycles/pixel, in [-0.5, 0.5).
  static double frequency(std::size_t k, std::size_t n) noexcept;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<Complex> coefficients_;
};

/// Unnormalized 2D DFT. Throws Error{data, "InvalidImage"} if an axis is shorter than 2.
Spectrum2D forward_dft2(const Grid& grid);

/// Inverse 2D DFT (scaled by 1/(width*height)); returns the real part.
Grid inverse_dft2(const Spectrum2D& spectrum);

/// Inverse 2D DFT keeping the complex result.
std::vector<Complex> inverse_dft2_complex(const Spectrum2D& spectrum);

}  // namespace vmdtex::spectral
