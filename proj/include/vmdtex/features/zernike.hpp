#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "vmdtex/dataset/image.hpp"

namespace vmdtex::features {

/// Highest order supported with exact 64-bit factorials (20! < 2^63).
inline constexpr int kMaxZernikeOrder = 20;

struct ZernikeSpec {
  int max_order = 10;           // P
  std::size_t grid_side = 128;  // N

  /// Throws Error{config, "BadOrder"} / Error{config, "BadParams"}.
  void validate() const;

  /// {(p, q) : 0 <= q <= p <= P, p - q even}, ordered by p then q.
  std::vector<std::pair<int, int>> moments() const;
};

/// Zernike radial polynomial R_pq(r), evaluated from its factorial sum with
/// exact integer coefficients. Throws Error{config, "BadOrder"} unless
/// 0 <= q <= p <= 20, p - q even, and 0 <= r <= 1.
double radial_polynomial(int p, int q, double r);

/// Precomputed discrete Zernike basis on an N x N grid mapped into the unit
/// disk by x_i = (2i + 1 - N) / (N sqrt 2) (and likewise y). Immutable after
/// construction; safe to share across threads.
class ZernikeBasis {
 public:
  explicit ZernikeBasis(const ZernikeSpec& spec);

  const ZernikeSpec& spec() const noexcept { return spec_; }
  const std::vector<std::pair<int, int>>& moments() const noexcept { return moments_; }

  /// |Z_pq| for every moment, in moments() order. `image` must be N x N.
  std::vector<double> magnitudes(const Grid& image) const;

 private:
  ZernikeSpec spec_;
  std::vector<std::pair<int, int>> moments_;
  // Per moment, (2(p+1)/(pi N^2)) R_pq(r) cos(q theta) and its -sin counterpart.
  std::vector<std::vector<double>> basis_re_;
  std::vector<std::vector<double>> basis_im_;
};

/// Convenience wrapper building a one-off basis.
std::map<std::pair<int, int>, double> zernike_magnitudes(const Grid& image, const ZernikeSpec& spec);

}  // namespace vmdtex::features
