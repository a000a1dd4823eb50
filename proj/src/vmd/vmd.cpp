#include "vmdtex/vmd/vmd.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "vmdtex/error.hpp"
#include "vmdtex/simd/kernels.hpp"
#include "vmdtex/util/random.hpp"
#include "vmdtex/vmd/fft.hpp"

namespace vmdtex::vmd {

using spectral::Spectrum2D;

double Frequency2D::norm() const noexcept { return std::hypot(x, y); }

bool in_analytic_half_plane(Frequency2D f) noexcept { return f.x > 0.0 || (f.x == 0.0 && f.y >= 0.0); }

Frequency2D fold_to_half_plane(Frequency2D f) noexcept {
  return in_analytic_half_plane(f) ? f : Frequency2D{-f.x, -f.y};
}

void VmdParams::validate() const {
  auto bad = [](const char* what) { return config_error("BadParams", what); };
  if (modes < 1) throw bad("VMD modes must be >= 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw bad("VMD alpha must be > 0");
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw bad("VMD tau must be >= 0");
  if (!(epsilon > 0.0)) throw bad("VMD epsilon must be > 0");
  if (max_iterations < 1) throw bad("VMD max_iterations must be >= 1");
}

namespace {

std::vector<Frequency2D> initial_centers(const VmdParams& params) {
  std::vector<Frequency2D> centers(static_cast<std::size_t>(params.modes));
  if (params.init == InitScheme::random) {
    util::Rng rng(params.seed);
    for (auto& c : centers) {
      c.x = rng.uniform(0.0, 0.5);
      c.y = rng.uniform(-0.5, 0.5);
    }
    return centers;
  }
  // Mode 0 at DC; the rest on a ring of radius 0.25*sqrt(2) across the half-plane.
  const double k_total = params.modes;
  const double radius = 0.25 * std::numbers::sqrt2;
  for (std::size_t k = 1; k < centers.size(); ++k) {
    const double angle = std::numbers::pi / 2.0 - static_cast<double>(k) * std::numbers::pi / k_total +
                         std::numbers::pi / (2.0 * k_total);
    centers[k] = {radius * std::cos(angle), radius * std::sin(angle)};
  }
  if (params.modes == 2) centers[1] = {0.25, 0.25};
  return centers;
}

struct BinCoordinates {
  std::vector<double> fx, fy, mirror_fx, mirror_fy;
};

BinCoordinates bin_coordinates(std::size_t width, std::size_t height) {
  const std::size_t n = width * height;
  BinCoordinates c{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n),
                   std::vector<double>(n)};
  for (std::size_t ky = 0; ky < height; ++ky) {
    for (std::size_t kx = 0; kx < width; ++kx) {
      const std::size_t i = ky * width + kx;
      const auto own = fold_to_half_plane({Spectrum2D::frequency(kx, width), Spectrum2D::frequency(ky, height)});
      const std::size_t mx = (width - kx) % width;
      const std::size_t my = (height - ky) % height;
      const auto mirror = fold_to_half_plane({Spectrum2D::frequency(mx, width), Spectrum2D::frequency(my, height)});
      c.fx[i] = own.x;
      c.fy[i] = own.y;
      c.mirror_fx[i] = mirror.x;
      c.mirror_fy[i] = mirror.y;
    }
  }
  return c;
}

bool finite(const simd::SweepSums& s) {
  return std::isfinite(s.change) && std::isfinite(s.previous) && std::isfinite(s.energy) &&
         std::isfinite(s.moment_x) && std::isfinite(s.moment_y);
}

}  // namespace

VmdResult vmd2d(const Grid& image, const VmdParams& params) {
  params.validate();
  for (double v : image.values()) {
    if (!std::isfinite(v)) throw numerical_error("NonFinite", "input image contains NaN/Inf");
  }

  const std::size_t width = image.width();
  const std::size_t height = image.height();
  const std::size_t bins = width * height;
  const auto K = static_cast<std::size_t>(params.modes);

  const Spectrum2D signal = spectral::forward_dft2(image);
  std::vector<double> signal_re(bins), signal_im(bins);
  for (std::size_t i = 0; i < bins; ++i) {
    signal_re[i] = signal.coefficients()[i].real();
    signal_im[i] = signal.coefficients()[i].imag();
  }
  const BinCoordinates coords = bin_coordinates(width, height);

  std::vector<std::vector<double>> mode_re(K, std::vector<double>(bins, 0.0));
  std::vector<std::vector<double>> mode_im(K, std::vector<double>(bins, 0.0));
  std::vector<double> sum_re(bins, 0.0), sum_im(bins, 0.0);
  const bool use_multiplier = params.tau > 0.0;
  std::vector<double> mu_re, mu_im;
  if (use_multiplier) {
    mu_re.assign(bins, 0.0);
    mu_im.assign(bins, 0.0);
  }

  std::vector<Frequency2D> centers = initial_centers(params);
  const simd::KernelTable& kernels = simd::kernels();

  simd::SweepArrays arrays;
  arrays.count = bins;
  arrays.fx = coords.fx.data();
  arrays.fy = coords.fy.data();
  arrays.mirror_fx = coords.mirror_fx.data();
  arrays.mirror_fy = coords.mirror_fy.data();
  arrays.signal_re = signal_re.data();
  arrays.signal_im = signal_im.data();
  arrays.multiplier_re = use_multiplier ? mu_re.data() : nullptr;
  arrays.multiplier_im = use_multiplier ? mu_im.data() : nullptr;
  arrays.sum_re = sum_re.data();
  arrays.sum_im = sum_im.data();

  VmdDiagnostics diag;
  for (int iter = 1; iter <= params.max_iterations; ++iter) {
    double criterion = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      arrays.mode_re = mode_re[k].data();
      arrays.mode_im = mode_im[k].data();
      const simd::SweepSums sums =
          kernels.mode_sweep(arrays, {centers[k].x, centers[k].y, 2.0 * params.alpha});
      if (!finite(sums)) {
        throw numerical_error("NonFinite", "VMD iterate became non-finite (check alpha/tau)");
      }
      if (sums.previous > 0.0) {
        criterion += sums.change / sums.previous;
      } else if (sums.change > 0.0) {
        criterion = std::numeric_limits<double>::infinity();
      }
      if (sums.energy > 0.0) {
        centers[k] = {sums.moment_x / sums.energy, sums.moment_y / sums.energy};
      }
    }
    if (use_multiplier) {
      kernels.multiplier_ascent(bins, params.tau, signal_re.data(), signal_im.data(), sum_re.data(),
                                sum_im.data(), mu_re.data(), mu_im.data());
    }
    diag.iterations = iter;
    diag.final_change = criterion;
    diag.change_history.push_back(criterion);
    if (criterion < params.epsilon) {
      diag.converged = true;
      break;
    }
  }

  VmdResult result;
  result.modes.reserve(K);
  Grid reconstruction(width, height);
  for (std::size_t k = 0; k < K; ++k) {
    Spectrum2D spectrum(width, height);
    auto coeffs = spectrum.coefficients();
    for (std::size_t i = 0; i < bins; ++i) coeffs[i] = {mode_re[k][i], mode_im[k][i]};
    Grid spatial = spectral::inverse_dft2(spectrum);
    for (std::size_t i = 0; i < bins; ++i) reconstruction.values()[i] += spatial.values()[i];
    result.modes.push_back({std::move(spatial), centers[k]});
  }

  double residual_sq = 0.0;
  for (std::size_t i = 0; i < bins; ++i) {
    const double r = image.values()[i] - reconstruction.values()[i];
    residual_sq += r * r;
  }
  const double image_norm = std::sqrt(image.energy());
  diag.residual_norm = std::sqrt(residual_sq);
  diag.residual = image_norm > 0.0 ? diag.residual_norm / image_norm : diag.residual_norm;
  result.diagnostics = std::move(diag);
  return result;
}

}  // namespace vmdtex::vmd
