#pragma once

// Data-parallel inner loops of the pipeline.
//
// Every kernel has a scalar reference and, where the build and CPU allow it,
// an AVX2 variant. Variants are selected once at runtime (see kernels()).
// Reductions in all variants accumulate into kLanes striped partial sums that
// are combined as (s0 + s1) + (s2 + s3), followed by the scalar tail, so the
// scalar and vector paths return bit-identical results.

#include <cstddef>
#include <string_view>

namespace vmdtex::simd {

inline constexpr std::size_t kLanes = 4;

/// Structure-of-arrays view of one ADMM mode update over `count` spectral bins.
struct SweepArrays {
  std::size_t count = 0;
  // Bin frequency folded onto the analytic half-plane, and the folded
  // frequency of the bin's Hermitian mirror (they differ only on Nyquist lines).
  const double* fx = nullptr;
  const double* fy = nullptr;
  const double* mirror_fx = nullptr;
  const double* mirror_fy = nullptr;
  const double* signal_re = nullptr;
  const double* signal_im = nullptr;
  // Lagrange multiplier spectrum; both null means identically zero.
  const double* multiplier_re = nullptr;
  const double* multiplier_im = nullptr;
  // Running sum of all mode spectra, updated in place.
  double* sum_re = nullptr;
  double* sum_im = nullptr;
  // Mode spectrum; replaced by its update.
  double* mode_re = nullptr;
  double* mode_im = nullptr;
};

struct SweepParams {
  double center_x = 0.0;
  double center_y = 0.0;
  double penalty = 0.0;  // 2 * alpha
};

/// Reductions produced by a mode sweep.
struct SweepSums {
  double change = 0.0;    // sum |new - old|^2
  double previous = 0.0;  // sum |old|^2
  double energy = 0.0;    // sum |new|^2
  double moment_x = 0.0;  // sum fx * |new|^2
  double moment_y = 0.0;  // sum fy * |new|^2
};

struct KernelTable {
  std::string_view name;

  /// Wiener-filter update of one mode:
  ///   w    = ( 1/(1 + c|f - center|^2) + 1/(1 + c|f_mirror - center|^2) ) / 2
  ///   new  = (signal - (sum - old) + multiplier/2) * w
  ///   sum  = (sum - old) + new
  SweepSums (*mode_sweep)(const SweepArrays& arrays, const SweepParams& params);

  /// multiplier += step * (signal - sum), complex SoA.
  void (*multiplier_ascent)(std::size_t count, double step, const double* signal_re,
                            const double* signal_im, const double* sum_re, const double* sum_im,
                            double* multiplier_re, double* multiplier_im);

  double (*dot)(const double* a, const double* b, std::size_t count);
  double (*squared_distance)(const double* a, const double* b, std::size_t count);
  double (*l1_distance)(const double* a, const double* b, std::size_t count);
};

enum class Isa { scalar, avx2 };

const KernelTable& scalar_kernels();

/// AVX2 table, or nullptr when not compiled in or unsupported by this CPU.
const KernelTable* avx2_kernels();

/// Active table. Chosen on first use: the widest supported ISA, unless the
/// VMDTEX_SIMD environment variable is set to "scalar" or "avx2".
const KernelTable& kernels();

/// Overrides the active table; returns false if `isa` is unavailable.
bool select_isa(Isa isa);

Isa active_isa();

}  // namespace vmdtex::simd
