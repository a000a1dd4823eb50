#pragma once
// Independent reference implementations used to check the library.
// Deliberately naive: direct sums, full sorts, textbook formulas.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "vmdtex/dataset/image.hpp"

namespace oracle {

using cplx = std::complex<double>;

/// Direct O(W^2 H^2) DFT, row-major, X[ky][kx] = sum f[y][x] e^{-2 pi i (kx x / W + ky y / H)}.
inline std::vector<cplx> naive_dft2(const std::vector<double>& f, std::size_t w, std::size_t h) {
  std::vector<cplx> out(w * h);
  for (std::size_t ky = 0; ky < h; ++ky) {
    for (std::size_t kx = 0; kx < w; ++kx) {
      cplx acc = 0.0;
      for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
          const double ang = -2.0 * std::numbers::pi *
                             (static_cast<double>(kx * x % w) / static_cast<double>(w) +
                              static_cast<double>(ky * y % h) / static_cast<double>(h));
          acc += f[y * w + x] * cplx(std::cos(ang), std::sin(ang));
        }
      }
      out[ky * w + kx] = acc;
    }
  }
  return out;
}

/// Dense Gaussian elimination with partial pivoting.
inline std::vector<double> gauss_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

/// Textbook two-class ReliefF (Kononenko / Robnik-Sikonja): every instance is a
/// reference, k nearest hits and misses under range-normalized Manhattan
/// distance, ties by row index, diff = |a - b| / range.
inline std::vector<double> reference_relieff(const std::vector<std::vector<double>>& x,
                                             const std::vector<int>& y, std::size_t k) {
  const std::size_t m = x.size(), d = x[0].size();
  std::vector<double> lo(d, INFINITY), hi(d, -INFINITY);
  for (const auto& row : x)
    for (std::size_t j = 0; j < d; ++j) {
      lo[j] = std::min(lo[j], row[j]);
      hi[j] = std::max(hi[j], row[j]);
    }
  auto diff = [&](std::size_t j, std::size_t a, std::size_t b) {
    const double range = hi[j] - lo[j];
    return range > 0 ? std::abs((x[a][j] - lo[j]) / range - (x[b][j] - lo[j]) / range) : 0.0;
  };
  std::vector<double> w(d, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::pair<double, std::size_t>> hits, misses;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == i) continue;
      double dist = 0;
      for (std::size_t j = 0; j < d; ++j) dist += diff(j, i, r);
      (y[r] == y[i] ? hits : misses).push_back({dist, r});
    }
    std::sort(hits.begin(), hits.end());
    std::sort(misses.begin(), misses.end());
    for (std::size_t j = 0; j < d; ++j) {
      double h = 0, s = 0;
      for (std::size_t n = 0; n < k; ++n) {
        h += diff(j, i, hits[n].second);
        s += diff(j, i, misses[n].second);
      }
      w[j] += (s - h) / static_cast<double>(k);
    }
  }
  for (double& v : w) v /= static_cast<double>(m);
  return w;
}

/// Differential box counting written out directly: rescale to [0,255], dyadic
/// s = 2..N/2, h = 256 s / N, n = ceil(max/h) - ceil(min/h) + 1, natural-log fit.
inline double reference_dbc(const vmdtex::Grid& g) {
  const std::size_t n = g.width();
  double lo = INFINITY, hi = -INFINITY;
  for (double v : g.values()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::vector<double> xs, ys;
  for (std::size_t s = 2; s <= n / 2; s *= 2) {
    const double h = static_cast<double>(s) * 256.0 / static_cast<double>(n);
    double count = 0;
    for (std::size_t by = 0; by < n; by += s) {
      for (std::size_t bx = 0; bx < n; bx += s) {
        double bmin = INFINITY, bmax = -INFINITY;
        for (std::size_t y = by; y < by + s; ++y)
          for (std::size_t x = bx; x < bx + s; ++x) {
            const double v = hi > lo ? (g.at(x, y) - lo) / (hi - lo) * 255.0 : 0.0;
            bmin = std::min(bmin, v);
            bmax = std::max(bmax, v);
          }
        count += std::ceil(bmax / h) - std::ceil(bmin / h) + 1.0;
      }
    }
    xs.push_back(std::log(static_cast<double>(n) / static_cast<double>(s)));
    ys.push_back(std::log(count));
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

/// Direct Zernike moment from the defining double sum (complex arithmetic,
/// factorials via tgamma), for cross-checking the precomputed basis.
inline double reference_zernike(const vmdtex::Grid& img, int p, int q) {
  const std::size_t n = img.width();
  auto fact = [](int v) { return std::tgamma(v + 1.0); };
  auto radial = [&](double r) {
    double s = 0;
    for (int k = 0; k <= (p - q) / 2; ++k) {
      s += ((k % 2) ? -1.0 : 1.0) * fact(p - k) /
           (fact(k) * fact((p + q) / 2 - k) * fact((p - q) / 2 - k)) * std::pow(r, p - 2 * k);
    }
    return s;
  };
  cplx z = 0;
  const double dn = static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = (2.0 * static_cast<double>(i) + 1.0 - dn) / (dn * std::sqrt(2.0));
      const double y = (2.0 * static_cast<double>(k) + 1.0 - dn) / (dn * std::sqrt(2.0));
      const double r = std::hypot(x, y), th = std::atan2(y, x);
      z += img.at(i, k) * radial(r) * std::polar(1.0, -q * th);
    }
  }
  return std::abs(z * (2.0 * (p + 1) / (std::numbers::pi * dn * dn)));
}

/// cos(2 pi 5 x / N) + cos(2 pi (60 x + 60 y) / N) and its two parts.
struct TwoTone {
  vmdtex::Grid image, low, high;
};

inline TwoTone two_tone(std::size_t n = 128) {
  TwoTone t{vmdtex::Grid(n, n), vmdtex::Grid(n, n), vmdtex::Grid(n, n)};
  const double dn = static_cast<double>(n);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      const double a = std::cos(2 * std::numbers::pi * 5.0 * static_cast<double>(x) / dn);
      const double b = std::cos(2 * std::numbers::pi * (60.0 * static_cast<double>(x) + 60.0 * static_cast<double>(y)) / dn);
      t.low.at(x, y) = a;
      t.high.at(x, y) = b;
      t.image.at(x, y) = a + b;
    }
  }
  return t;
}

inline vmdtex::Grid uniform_noise(std::size_t w, std::size_t h, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  vmdtex::Grid g(w, h);
  for (double& v : g.values()) v = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return g;
}

/// Scratch directory removed on destruction.
struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("vmdtex-" + tag + "-" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

}  // namespace oracle
