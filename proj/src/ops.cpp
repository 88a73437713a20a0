#include "ccnv/ops.hpp"

#include <cmath>
#include <stdexcept>

#include "ccnv/fft.hpp"
#include "ccnv/kernels.hpp"

namespace ccnv {

void GridSpec::validate() const {
  if (n < 8 || (n & (n - 1)) != 0)
    throw std::invalid_argument("grid.n: must be a power of two >= 8");
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
    throw std::invalid_argument("grid.dealias_fraction: must lie in (0, 1]");
  if (std::abs(length - kTwoPi) > 1e-12)
    throw std::invalid_argument("grid.length: fixed at 2*pi");
}

SpectralField& operator+=(SpectralField& a, const SpectralField& b) {
  kern::map_elements(a.coeffs.size(), [&](std::size_t i) { a.coeffs[i] += b.coeffs[i]; });
  return a;
}

SpectralField& operator-=(SpectralField& a, const SpectralField& b) {
  kern::map_elements(a.coeffs.size(), [&](std::size_t i) { a.coeffs[i] -= b.coeffs[i]; });
  return a;
}

SpectralField& operator*=(SpectralField& a, double c) {
  kern::map_elements(a.coeffs.size(), [&](std::size_t i) { a.coeffs[i] *= c; });
  return a;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double c, SpectralField a) { return a *= c; }

RealField& operator+=(RealField& a, const RealField& b) {
  kern::map_elements(a.values.size(), [&](std::size_t i) { a.values[i] += b.values[i]; });
  return a;
}

RealField operator*(double c, RealField a) {
  kern::map_elements(a.values.size(), [&](std::size_t i) { a.values[i] *= c; });
  return a;
}

SpectralField transform_forward(const RealField& f) {
  const int n = f.grid.n;
  SpectralField out(f.grid);
  kern::map_elements(f.values.size(), [&](std::size_t i) { out.coeffs[i] = f.values[i]; });
  fft2d(out.coeffs.data(), n, -1);
  const double scale = 1.0 / (static_cast<double>(n) * n);
  kern::map_elements(out.coeffs.size(), [&](std::size_t i) { out.coeffs[i] *= scale; });
  return out;
}

bool is_hermitian(const SpectralField& f, double rel_tol) {
  const int n = f.grid.n;
  double cmax2 = 0.0;
  for (const auto& c : f.coeffs) cmax2 = std::max(cmax2, std::norm(c));
  if (cmax2 == 0.0) return true;
  const double tol2 = rel_tol * rel_tol * cmax2;
  for (int m1 = 0; m1 < n; ++m1) {
    const int r1 = (n - m1) % n;
    for (int m2 = 0; m2 < n; ++m2) {
      const int r2 = (n - m2) % n;
      const Complex a = f.coeffs[static_cast<std::size_t>(m1) * n + m2];
      const Complex b = f.coeffs[static_cast<std::size_t>(r1) * n + r2];
      if (std::norm(a - std::conj(b)) > tol2) return false;
    }
  }
  return true;
}

void hermitian_project(SpectralField& f) {
  const int n = f.grid.n;
  for (int m1 = 0; m1 < n; ++m1) {
    const int r1 = (n - m1) % n;
    for (int m2 = 0; m2 < n; ++m2) {
      const int r2 = (n - m2) % n;
      const std::size_t i = static_cast<std::size_t>(m1) * n + m2;
      const std::size_t j = static_cast<std::size_t>(r1) * n + r2;
      if (i < j) {
        const Complex avg = 0.5 * (f.coeffs[i] + std::conj(f.coeffs[j]));
        f.coeffs[i] = avg;
        f.coeffs[j] = std::conj(avg);
      } else if (i == j) {
        f.coeffs[i] = Complex(f.coeffs[i].real(), 0.0);
      }
    }
  }
}

RealField to_physical(const SpectralField& f) {
  const int n = f.grid.n;
  std::vector<Complex> work(f.coeffs);
  fft2d(work.data(), n, +1);
  RealField out(f.grid);
  kern::map_elements(out.values.size(), [&](std::size_t i) { out.values[i] = work[i].real(); });
  return out;
}

RealField transform_inverse(const SpectralField& f) {
  if (!is_hermitian(f))
    throw std::invalid_argument("transform_inverse: coefficients are not Hermitian-symmetric");
  return to_physical(f);
}

void dealias(SpectralField& f) {
  const int n = f.grid.n;
  const int limit = f.grid.dealias_limit();
  kern::map_elements(static_cast<std::size_t>(n), [&](std::size_t row) {
    const int k1 = f.grid.wavenumber(static_cast<int>(row));
    const std::size_t base = row * n;
    if (std::abs(k1) > limit) {
      for (int m2 = 0; m2 < n; ++m2) f.coeffs[base + m2] = 0.0;
      return;
    }
    for (int m2 = 0; m2 < n; ++m2)
      if (std::abs(f.grid.wavenumber(m2)) > limit) f.coeffs[base + m2] = 0.0;
  });
}

SpectralField dealiased(SpectralField f) {
  dealias(f);
  return f;
}

namespace {

// Apply a per-mode multiplier given as a function of (k1, k2).
template <class M>
SpectralField apply_multiplier(const SpectralField& f, M&& m) {
  const int n = f.grid.n;
  SpectralField out(f.grid);
  kern::map_elements(static_cast<std::size_t>(n), [&](std::size_t row) {
    const int k1 = f.grid.wavenumber(static_cast<int>(row));
    const std::size_t base = row * n;
    for (int m2 = 0; m2 < n; ++m2) {
      const int k2 = f.grid.wavenumber(m2);
      out.coeffs[base + m2] = m(k1, k2) * f.coeffs[base + m2];
    }
  });
  return out;
}

}  // namespace

SpectralField multiplier_lambda(const SpectralField& f, double alpha) {
  if (alpha < -2.0 || alpha > 4.0)
    throw std::invalid_argument("multiplier_lambda: alpha outside [-2, 4]");
  if (alpha == 0.0) return f;
  return apply_multiplier(f, [alpha](int k1, int k2) -> Complex {
    const double k2sum = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
    if (k2sum == 0.0) return 0.0;
    return std::pow(k2sum, 0.5 * alpha);
  });
}

SpectralField riesz1(const SpectralField& f) {
  return apply_multiplier(f, [](int k1, int k2) -> Complex {
    const double kk = std::sqrt(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
    if (kk == 0.0) return 0.0;
    return Complex(0.0, k1 / kk);
  });
}

SpectralField partial_derivative(const SpectralField& f, int axis) {
  if (axis != 1 && axis != 2) throw std::invalid_argument("partial_derivative: axis must be 1 or 2");
  return apply_multiplier(f, [axis](int k1, int k2) -> Complex {
    return Complex(0.0, axis == 1 ? k1 : k2);
  });
}

VectorField biot_savart(const SpectralField& omega_curl) {
  // u = grad^perp psi with Delta psi = curl; u1 = i k2 w / |k|^2, u2 = -i k1 w / |k|^2.
  VectorField u{SpectralField(omega_curl.grid), SpectralField(omega_curl.grid)};
  const int n = omega_curl.grid.n;
  kern::map_elements(static_cast<std::size_t>(n), [&](std::size_t row) {
    const int k1 = omega_curl.grid.wavenumber(static_cast<int>(row));
    const std::size_t base = row * n;
    for (int m2 = 0; m2 < n; ++m2) {
      const int k2 = omega_curl.grid.wavenumber(m2);
      const double k2sum = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
      if (k2sum == 0.0) {
        u.u1.coeffs[base + m2] = 0.0;
        u.u2.coeffs[base + m2] = 0.0;
        continue;
      }
      const Complex w = omega_curl.coeffs[base + m2];
      u.u1.coeffs[base + m2] = Complex(0.0, k2 / k2sum) * w;
      u.u2.coeffs[base + m2] = Complex(0.0, -k1 / k2sum) * w;
    }
  });
  return u;
}

SpectralField curl(const VectorField& u) {
  return partial_derivative(u.u2, 1) - partial_derivative(u.u1, 2);
}

double max_divergence(const VectorField& u) {
  const int n = u.u1.grid.n;
  return kern::reduce_max(u.u1.coeffs.size(), [&](std::size_t i) {
    const int k1 = u.u1.grid.wavenumber(static_cast<int>(i) / n);
    const int k2 = u.u1.grid.wavenumber(static_cast<int>(i) % n);
    return std::abs(Complex(0.0, k1) * u.u1.coeffs[i] + Complex(0.0, k2) * u.u2.coeffs[i]);
  });
}

SpectralField heat_semigroup(const SpectralField& f, double t) {
  if (t < 0.0) throw std::invalid_argument("heat_semigroup: t must be >= 0");
  if (t == 0.0) return f;
  return apply_multiplier(f, [t](int k1, int k2) -> Complex {
    const double k2sum = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
    return std::exp(-k2sum * t);
  });
}

SpectralField advect_physical(const RealField& u1, const RealField& u2, const SpectralField& f) {
  const RealField f1 = to_physical(partial_derivative(f, 1));
  const RealField f2 = to_physical(partial_derivative(f, 2));
  RealField prod(f.grid);
  kern::multiply_add_pair(u1.values, f1.values, u2.values, f2.values, prod.values);
  SpectralField out = transform_forward(prod);
  dealias(out);
  return out;
}

SpectralField advect(const VectorField& u, const SpectralField& f) {
  if (!(u.u1.grid == f.grid) || !(u.u2.grid == f.grid))
    throw std::invalid_argument("advect: grid mismatch");
  return advect_physical(transform_inverse(u.u1), transform_inverse(u.u2), f);
}

double lp_norm(const RealField& f, double p) {
  if (p == kInf) return kern::max_abs(f.values);
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1 or infinity");
  const double s = kern::sum_abs_pow(f.values, p) * f.grid.cell_area();
  return std::pow(s, 1.0 / p);
}

double lp_norm(const SpectralField& f, double p) {
  if (p == 2.0) return l2_norm(f);
  return lp_norm(to_physical(f), p);
}

double l2_norm(const SpectralField& f) {
  return kTwoPi * std::sqrt(kern::sum_abs2(f.coeffs));
}

namespace {

template <class W>
double weighted_abs2_sum(const SpectralField& f, W&& w) {
  const int n = f.grid.n;
  return kern::reduce_sum(f.coeffs.size(), [&](std::size_t i) {
    const int k1 = f.grid.wavenumber(static_cast<int>(i / n));
    const int k2 = f.grid.wavenumber(static_cast<int>(i % n));
    const double a2 = f.coeffs[i].real() * f.coeffs[i].real() +
                      f.coeffs[i].imag() * f.coeffs[i].imag();
    return w(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2) * a2;
  });
}

}  // namespace

double sobolev_norm(const SpectralField& f, double s) {
  return kTwoPi * std::sqrt(weighted_abs2_sum(f, [s](double k2sum) {
    return std::pow(1.0 + k2sum, s);
  }));
}

double lambda_l2_norm(const SpectralField& f, double s) {
  return kTwoPi * std::sqrt(weighted_abs2_sum(f, [s](double k2sum) {
    return k2sum == 0.0 ? 0.0 : std::pow(k2sum, s);
  }));
}

double inner_l2(const SpectralField& a, const SpectralField& b) {
  return kTwoPi * kTwoPi * kern::dot_real(a.coeffs, b.coeffs);
}

double max_abs(const RealField& f) { return kern::max_abs(f.values); }

bool all_finite(const SpectralField& f) { return kern::all_finite(f.coeffs); }

SpectralField oversample2(const SpectralField& f) {
  const int n = f.grid.n;
  GridSpec g2 = f.grid;
  g2.n = 2 * n;
  SpectralField out(g2);
  for (int m1 = 0; m1 < n; ++m1) {
    const int k1 = f.grid.wavenumber(m1);
    for (int m2 = 0; m2 < n; ++m2) {
      const int k2 = f.grid.wavenumber(m2);
      out.mode(k1, k2) = f.coeffs[static_cast<std::size_t>(m1) * n + m2];
    }
  }
  return out;
}

RealField gradient_magnitude(const SpectralField& f) {
  const RealField g1 = to_physical(partial_derivative(f, 1));
  const RealField g2 = to_physical(partial_derivative(f, 2));
  RealField out(f.grid);
  kern::map_elements(out.values.size(), [&](std::size_t i) {
    out.values[i] = std::hypot(g1.values[i], g2.values[i]);
  });
  return out;
}

double lp_norm_magnitude(const RealField& a, const RealField& b, double p) {
  RealField mag(a.grid);
  kern::map_elements(mag.values.size(), [&](std::size_t i) {
    mag.values[i] = std::hypot(a.values[i], b.values[i]);
  });
  return lp_norm(mag, p);
}

}  // namespace ccnv
