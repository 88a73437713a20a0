#pragma once

#include <complex>
#include <vector>

#include "ccnv/grid.hpp"

namespace ccnv {

using Complex = std::complex<double>;

// Scalar samples on the periodic grid; values[i1*n + i2] is the sample at
// x = (i1*h, i2*h), h = 2*pi/n.
struct RealField {
  GridSpec grid;
  std::vector<double> values;

  RealField() = default;
  explicit RealField(const GridSpec& g) : grid(g), values(static_cast<size_t>(g.size()), 0.0) {}

  double& at(int i1, int i2) { return values[static_cast<size_t>(i1) * grid.n + i2]; }
  double at(int i1, int i2) const { return values[static_cast<size_t>(i1) * grid.n + i2]; }
};

// Fourier coefficients per integer wavenumber, normalized so that a constant
// field c has coeffs(0,0) = c. coeffs[m1*n + m2] carries wavenumber
// (wavenumber(m1), wavenumber(m2)).
struct SpectralField {
  GridSpec grid;
  std::vector<Complex> coeffs;

  SpectralField() = default;
  explicit SpectralField(const GridSpec& g) : grid(g), coeffs(static_cast<size_t>(g.size())) {}

  Complex& mode(int k1, int k2) {
    return coeffs[static_cast<size_t>(grid.index_of(k1)) * grid.n + grid.index_of(k2)];
  }
  Complex mode(int k1, int k2) const {
    return coeffs[static_cast<size_t>(grid.index_of(k1)) * grid.n + grid.index_of(k2)];
  }
  Complex mean() const { return coeffs.empty() ? Complex{} : coeffs[0]; }
};

// Two-component velocity in spectral form.
struct VectorField {
  SpectralField u1, u2;
};

SpectralField& operator+=(SpectralField& a, const SpectralField& b);
SpectralField& operator-=(SpectralField& a, const SpectralField& b);
SpectralField& operator*=(SpectralField& a, double c);
SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double c, SpectralField a);

RealField& operator+=(RealField& a, const RealField& b);
RealField operator*(double c, RealField a);

}  // namespace ccnv
