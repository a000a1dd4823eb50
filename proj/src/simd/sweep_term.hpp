#pragma once

// Per-element scalar bodies shared by the scalar kernels and the vector tails.
// The vector code evaluates the same expressions in the same order.

#include <cmath>

#include "vmdtex/simd/kernels.hpp"

namespace vmdtex::simd::detail {

struct SweepTerm {
  double change, previous, energy, moment_x, moment_y;
};

inline SweepTerm sweep_one(const SweepArrays& a, const SweepParams& p, std::size_t i,
                           bool with_multiplier) {
  const double dx1 = a.fx[i] - p.center_x;
  const double dy1 = a.fy[i] - p.center_y;
  const double dx2 = a.mirror_fx[i] - p.center_x;
  const double dy2 = a.mirror_fy[i] - p.center_y;
  const double w1 = 1.0 / (1.0 + p.penalty * (dx1 * dx1 + dy1 * dy1));
  const double w2 = 1.0 / (1.0 + p.penalty * (dx2 * dx2 + dy2 * dy2));
  const double w = 0.5 * (w1 + w2);

  const double old_re = a.mode_re[i];
  const double old_im = a.mode_im[i];
  const double others_re = a.sum_re[i] - old_re;
  const double others_im = a.sum_im[i] - old_im;
  double target_re = a.signal_re[i] - others_re;
  double target_im = a.signal_im[i] - others_im;
  if (with_multiplier) {
    target_re = target_re + 0.5 * a.multiplier_re[i];
    target_im = target_im + 0.5 * a.multiplier_im[i];
  }
  const double new_re = target_re * w;
  const double new_im = target_im * w;
  a.mode_re[i] = new_re;
  a.mode_im[i] = new_im;
  a.sum_re[i] = others_re + new_re;
  a.sum_im[i] = others_im + new_im;

  const double d_re = new_re - old_re;
  const double d_im = new_im - old_im;
  const double e = new_re * new_re + new_im * new_im;
  return {d_re * d_re + d_im * d_im, old_re * old_re + old_im * old_im, e, a.fx[i] * e,
          a.fy[i] * e};
}

inline double combine_lanes(const double* lanes) {
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace vmdtex::simd::detail
