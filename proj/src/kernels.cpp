#include "ccnv/kernels.hpp"

#include <algorithm>

namespace ccnv::kern {

double sum(std::span<const double> x) {
  return reduce_sum(x.size(), [&](std::size_t i) { return x[i]; });
}

double sum_serial(std::span<const double> x) {
  return reduce_sum_serial(x.size(), [&](std::size_t i) { return x[i]; });
}

namespace {

// |v|^p with exact paths for the exponents the diagnostics use constantly.
inline double abs_pow(double v, double p) {
  const double a = std::abs(v);
  if (p == 2.0) return a * a;
  if (p == 1.0) return a;
  if (p == 4.0) {
    const double a2 = a * a;
    return a2 * a2;
  }
  if (p == 8.0) {
    const double a2 = a * a;
    const double a4 = a2 * a2;
    return a4 * a4;
  }
  return std::pow(a, p);
}

}  // namespace

double sum_abs_pow(std::span<const double> x, double p) {
  return reduce_sum(x.size(), [&](std::size_t i) { return abs_pow(x[i], p); });
}

double sum_abs_pow_serial(std::span<const double> x, double p) {
  return reduce_sum_serial(x.size(), [&](std::size_t i) { return abs_pow(x[i], p); });
}

double max_abs(std::span<const double> x) {
  return reduce_max(x.size(), [&](std::size_t i) { return std::abs(x[i]); });
}

double max_abs_serial(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double dot_real(std::span<const std::complex<double>> a,
                std::span<const std::complex<double>> b) {
  return reduce_sum(a.size(), [&](std::size_t i) {
    return a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  });
}

double dot_real_serial(std::span<const std::complex<double>> a,
                       std::span<const std::complex<double>> b) {
  return reduce_sum_serial(a.size(), [&](std::size_t i) {
    return a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  });
}

double sum_abs2(std::span<const std::complex<double>> a) {
  return reduce_sum(a.size(), [&](std::size_t i) {
    return a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  });
}

bool all_finite(std::span<const double> x) {
  // max of |x| is NaN-free only if every entry is finite; scan directly.
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

bool all_finite(std::span<const std::complex<double>> x) {
  for (const auto& v : x)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  map_elements(a.size(), [&](std::size_t i) { out[i] = a[i] * b[i]; });
}

void multiply_serial(std::span<const double> a, std::span<const double> b,
                     std::span<double> out) {
  map_elements_serial(a.size(), [&](std::size_t i) { out[i] = a[i] * b[i]; });
}

void multiply_add_pair(std::span<const double> a, std::span<const double> b,
                       std::span<const double> c, std::span<const double> d,
                       std::span<double> out) {
  map_elements(a.size(), [&](std::size_t i) { out[i] = a[i] * b[i] + c[i] * d[i]; });
}

void multiply_add_pair_serial(std::span<const double> a, std::span<const double> b,
                              std::span<const double> c, std::span<const double> d,
                              std::span<double> out) {
  map_elements_serial(a.size(), [&](std::size_t i) { out[i] = a[i] * b[i] + c[i] * d[i]; });
}

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace ccnv::kern
