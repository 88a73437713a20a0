#pragma once

// Independent brute-force references used only by the tests: direct O(n^4)
// DFT summation and direct frequency sums. No code shared with the library's
// transform path.

#include <complex>
#include <vector>

#include "ccnv/field.hpp"

namespace ccnv::oracle {

inline SpectralField dft_forward_direct(const RealField& f) {
  const int n = f.grid.n;
  SpectralField out(f.grid);
  for (int m1 = 0; m1 < n; ++m1) {
    for (int m2 = 0; m2 < n; ++m2) {
      const int k1 = f.grid.wavenumber(m1);
      const int k2 = f.grid.wavenumber(m2);
      Complex acc = 0.0;
      for (int j1 = 0; j1 < n; ++j1) {
        for (int j2 = 0; j2 < n; ++j2) {
          const double phase = -kTwoPi * (static_cast<double>(k1) * j1 +
                                          static_cast<double>(k2) * j2) / n;
          acc += f.at(j1, j2) * Complex(std::cos(phase), std::sin(phase));
        }
      }
      out.coeffs[static_cast<std::size_t>(m1) * n + m2] = acc / (static_cast<double>(n) * n);
    }
  }
  return out;
}

inline RealField dft_inverse_direct(const SpectralField& F) {
  const int n = F.grid.n;
  RealField out(F.grid);
  for (int j1 = 0; j1 < n; ++j1) {
    for (int j2 = 0; j2 < n; ++j2) {
      Complex acc = 0.0;
      for (int m1 = 0; m1 < n; ++m1) {
        for (int m2 = 0; m2 < n; ++m2) {
          const int k1 = F.grid.wavenumber(m1);
          const int k2 = F.grid.wavenumber(m2);
          const double phase = kTwoPi * (static_cast<double>(k1) * j1 +
                                         static_cast<double>(k2) * j2) / n;
          acc += F.coeffs[static_cast<std::size_t>(m1) * n + m2] *
                 Complex(std::cos(phase), std::sin(phase));
        }
      }
      out.at(j1, j2) = acc.real();
    }
  }
  return out;
}

// Pointwise product computed through the direct transforms, spectrum of a*b.
inline SpectralField product_direct(const SpectralField& a, const SpectralField& b) {
  const RealField pa = dft_inverse_direct(a);
  const RealField pb = dft_inverse_direct(b);
  RealField prod(a.grid);
  for (std::size_t i = 0; i < prod.values.size(); ++i)
    prod.values[i] = pa.values[i] * pb.values[i];
  return dft_forward_direct(prod);
}

// H^s norm by direct frequency sum: (sum (1+|k|^2)^s |f_k|^2 (2 pi)^2)^{1/2}.
inline double sobolev_direct(const SpectralField& f, double s) {
  const int n = f.grid.n;
  double acc = 0.0;
  for (int m1 = 0; m1 < n; ++m1) {
    for (int m2 = 0; m2 < n; ++m2) {
      const int k1 = f.grid.wavenumber(m1);
      const int k2 = f.grid.wavenumber(m2);
      const double k2sum = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
      acc += std::pow(1.0 + k2sum, s) *
             std::norm(f.coeffs[static_cast<std::size_t>(m1) * n + m2]);
    }
  }
  return kTwoPi * std::sqrt(acc);
}

}  // namespace ccnv::oracle
