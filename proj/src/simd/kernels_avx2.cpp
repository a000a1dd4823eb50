// AVX2 variants. Compiled with -mavx2 only; callers reach them through the
// dispatch table after a CPU feature check.

#include <immintrin.h>

#include "sweep_term.hpp"
#include "vmdtex/simd/kernels.hpp"

namespace vmdtex::simd {
namespace {

using detail::combine_lanes;

inline double reduce(__m256d v) {
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, v);
  return combine_lanes(lanes);
}

inline __m256d squared_norm(__m256d dx, __m256d dy) {
  return _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
}

SweepSums mode_sweep(const SweepArrays& a, const SweepParams& p) {
  const bool with_multiplier = a.multiplier_re != nullptr;
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d cx = _mm256_set1_pd(p.center_x);
  const __m256d cy = _mm256_set1_pd(p.center_y);
  const __m256d penalty = _mm256_set1_pd(p.penalty);

  __m256d change = _mm256_setzero_pd(), previous = _mm256_setzero_pd();
  __m256d energy = _mm256_setzero_pd(), mx = _mm256_setzero_pd(), my = _mm256_setzero_pd();

  const std::size_t body = a.count - a.count % kLanes;
  for (std::size_t i = 0; i < body; i += kLanes) {
    const __m256d fx = _mm256_loadu_pd(a.fx + i);
    const __m256d fy = _mm256_loadu_pd(a.fy + i);
    const __m256d d1 = squared_norm(_mm256_sub_pd(fx, cx), _mm256_sub_pd(fy, cy));
    const __m256d d2 = squared_norm(_mm256_sub_pd(_mm256_loadu_pd(a.mirror_fx + i), cx),
                                    _mm256_sub_pd(_mm256_loadu_pd(a.mirror_fy + i), cy));
    const __m256d w1 = _mm256_div_pd(one, _mm256_add_pd(one, _mm256_mul_pd(penalty, d1)));
    const __m256d w2 = _mm256_div_pd(one, _mm256_add_pd(one, _mm256_mul_pd(penalty, d2)));
    const __m256d w = _mm256_mul_pd(half, _mm256_add_pd(w1, w2));

    const __m256d old_re = _mm256_loadu_pd(a.mode_re + i);
    const __m256d old_im = _mm256_loadu_pd(a.mode_im + i);
    const __m256d others_re = _mm256_sub_pd(_mm256_loadu_pd(a.sum_re + i), old_re);
    const __m256d others_im = _mm256_sub_pd(_mm256_loadu_pd(a.sum_im + i), old_im);
    __m256d target_re = _mm256_sub_pd(_mm256_loadu_pd(a.signal_re + i), others_re);
    __m256d target_im = _mm256_sub_pd(_mm256_loadu_pd(a.signal_im + i), others_im);
    if (with_multiplier) {
      target_re = _mm256_add_pd(target_re, _mm256_mul_pd(half, _mm256_loadu_pd(a.multiplier_re + i)));
      target_im = _mm256_add_pd(target_im, _mm256_mul_pd(half, _mm256_loadu_pd(a.multiplier_im + i)));
    }
    const __m256d new_re = _mm256_mul_pd(target_re, w);
    const __m256d new_im = _mm256_mul_pd(target_im, w);
    _mm256_storeu_pd(a.mode_re + i, new_re);
    _mm256_storeu_pd(a.mode_im + i, new_im);
    _mm256_storeu_pd(a.sum_re + i, _mm256_add_pd(others_re, new_re));
    _mm256_storeu_pd(a.sum_im + i, _mm256_add_pd(others_im, new_im));

    const __m256d e = squared_norm(new_re, new_im);
    change = _mm256_add_pd(change, squared_norm(_mm256_sub_pd(new_re, old_re),
                                                _mm256_sub_pd(new_im, old_im)));
    previous = _mm256_add_pd(previous, squared_norm(old_re, old_im));
    energy = _mm256_add_pd(energy, e);
    mx = _mm256_add_pd(mx, _mm256_mul_pd(fx, e));
    my = _mm256_add_pd(my, _mm256_mul_pd(fy, e));
  }

  SweepSums s{reduce(change), reduce(previous), reduce(energy), reduce(mx), reduce(my)};
  for (std::size_t i = body; i < a.count; ++i) {
    const auto t = detail::sweep_one(a, p, i, with_multiplier);
    s.change += t.change;
    s.previous += t.previous;
    s.energy += t.energy;
    s.moment_x += t.moment_x;
    s.moment_y += t.moment_y;
  }
  return s;
}

void multiplier_ascent(std::size_t n, double step, const double* sig_re, const double* sig_im,
                       const double* sum_re, const double* sum_im, double* mu_re, double* mu_im) {
  const __m256d s = _mm256_set1_pd(step);
  const std::size_t body = n - n % kLanes;
  for (std::size_t i = 0; i < body; i += kLanes) {
    const __m256d r = _mm256_sub_pd(_mm256_loadu_pd(sig_re + i), _mm256_loadu_pd(sum_re + i));
    const __m256d m = _mm256_sub_pd(_mm256_loadu_pd(sig_im + i), _mm256_loadu_pd(sum_im + i));
    _mm256_storeu_pd(mu_re + i, _mm256_add_pd(_mm256_loadu_pd(mu_re + i), _mm256_mul_pd(s, r)));
    _mm256_storeu_pd(mu_im + i, _mm256_add_pd(_mm256_loadu_pd(mu_im + i), _mm256_mul_pd(s, m)));
  }
  for (std::size_t i = body; i < n; ++i) {
    mu_re[i] = mu_re[i] + step * (sig_re[i] - sum_re[i]);
    mu_im[i] = mu_im[i] + step * (sig_im[i] - sum_im[i]);
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t body = n - n % kLanes;
  for (std::size_t i = 0; i < body; i += kLanes)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  double total = reduce(acc);
  for (std::size_t i = body; i < n; ++i) total += a[i] * b[i];
  return total;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t body = n - n % kLanes;
  for (std::size_t i = 0; i < body; i += kLanes) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double total = reduce(acc);
  for (std::size_t i = body; i < n; ++i) {
    const double d = a[i] - b[i];
    total += d * d;
  }
  return total;
}

double l1_distance(const double* a, const double* b, std::size_t n) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  const std::size_t body = n - n % kLanes;
  for (std::size_t i = 0; i < body; i += kLanes) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign_mask, d));
  }
  double total = reduce(acc);
  for (std::size_t i = body; i < n; ++i) total += std::fabs(a[i] - b[i]);
  return total;
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{"avx2", mode_sweep, multiplier_ascent, dot, squared_distance,
                                 l1_distance};
  return table;
}

}  // namespace vmdtex::simd
