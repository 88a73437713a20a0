#pragma once

#include <cmath>
#include <numbers>

namespace ccnv {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Square periodic grid on [0, 2*pi)^2 with n points per side.
// Resolved integer wavenumbers are k in {-n/2, ..., n/2-1} per axis,
// stored in DFT order (0..n/2-1, -n/2..-1).
struct GridSpec {
  int n = 64;
  double length = kTwoPi;               // domain side; fixed at 2*pi
  double dealias_fraction = 2.0 / 3.0;  // keep modes with |k_i| <= dealias_fraction*n/2

  void validate() const;
  bool operator==(const GridSpec&) const = default;

  int size() const { return n * n; }
  double spacing() const { return length / n; }
  double cell_area() const { return spacing() * spacing(); }

  // Largest kept |k_i| after a pointwise product.
  int dealias_limit() const {
    return static_cast<int>(std::floor(dealias_fraction * n / 2.0 + 1e-12));
  }

  int wavenumber(int idx) const { return idx < n / 2 ? idx : idx - n; }
  int index_of(int k) const { return k >= 0 ? k : k + n; }
};

}  // namespace ccnv
