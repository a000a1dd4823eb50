#include <cmath>

#include "sweep_term.hpp"
#include "vmdtex/simd/kernels.hpp"

namespace vmdtex::simd {
namespace {

using detail::combine_lanes;

SweepSums mode_sweep(const SweepArrays& a, const SweepParams& p) {
  const bool with_multiplier = a.multiplier_re != nullptr;
  double change[kLanes] = {}, previous[kLanes] = {}, energy[kLanes] = {};
  double mx[kLanes] = {}, my[kLanes] = {};
  const std::size_t body = a.count - a.count % kLanes;
  for (std::size_t i = 0; i < body; i += kLanes) {
    for (std::size_t l = 0; l < kLanes; ++l) {
      const auto t = detail::sweep_one(a, p, i + l, with_multiplier);
      change[l] += t.change;
      previous[l] += t.previous;
      energy[l] += t.energy;
      mx[l] += t.moment_x;
      my[l] += t.moment_y;
    }
  }
  SweepSums s{combine_lanes(change), combine_lanes(previous), combine_lanes(energy),
              combine_lanes(mx), combine_lanes(my)};
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
  for (std::size_t i = 0; i < n; ++i) {
    mu_re[i] = mu_re[i] + step * (sig_re[i] - sum_re[i]);
    mu_im[i] = mu_im[i] + step * (sig_im[i] - sum_im[i]);
  }
}

template <typename Term>
double striped_sum(std::size_t n, Term term) {
  double acc[kLanes] = {};
  const std::size_t body = n - n % kLanes;
  for (std::size_t i = 0; i < body; i += kLanes)
    for (std::size_t l = 0; l < kLanes; ++l) acc[l] += term(i + l);
  double total = combine_lanes(acc);
  for (std::size_t i = body; i < n; ++i) total += term(i);
  return total;
}

double dot(const double* a, const double* b, std::size_t n) {
  return striped_sum(n, [=](std::size_t i) { return a[i] * b[i]; });
}

double squared_distance(const double* a, const double* b, std::size_t n) {
  return striped_sum(n, [=](std::size_t i) {
    const double d = a[i] - b[i];
    return d * d;
  });
}

double l1_distance(const double* a, const double* b, std::size_t n) {
  return striped_sum(n, [=](std::size_t i) { return std::fabs(a[i] - b[i]); });
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", mode_sweep, multiplier_ascent, dot, squared_distance,
                                 l1_distance};
  return table;
}

}  // namespace vmdtex::simd
