#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

// Data-parallel inner loops. Each kernel has an OpenMP implementation (the
// deployed path) and a *_serial reference used by the tests and the benchmark.
//
// Reductions use Neumaier compensation over fixed-size chunks combined in
// chunk order, so the result is identical for any thread count. The serial
// references reduce the whole range in one compensated pass.
namespace ccnv::kern {

inline constexpr std::size_t kChunk = 8192;

struct Accum {
  double s = 0.0, c = 0.0;
  void add(double v) {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  }
  double get() const { return s + c; }
};

// Chunked compensated reduction of f(i) over [0, count); deterministic for
// any scheduling.
template <class F>
double reduce_sum(std::size_t count, F&& f) {
  const std::size_t nchunks = (count + kChunk - 1) / kChunk;
  std::vector<double> partial(nchunks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long ci = 0; ci < static_cast<long long>(nchunks); ++ci) {
    const std::size_t b = static_cast<std::size_t>(ci) * kChunk;
    const std::size_t e = std::min(b + kChunk, count);
    Accum a;
    for (std::size_t i = b; i < e; ++i) a.add(f(i));
    partial[static_cast<std::size_t>(ci)] = a.get();
  }
  Accum total;
  for (double p : partial) total.add(p);
  return total.get();
}

template <class F>
double reduce_sum_serial(std::size_t count, F&& f) {
  Accum a;
  for (std::size_t i = 0; i < count; ++i) a.add(f(i));
  return a.get();
}

template <class F>
double reduce_max(std::size_t count, F&& f) {
  const std::size_t nchunks = (count + kChunk - 1) / kChunk;
  std::vector<double> partial(nchunks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long ci = 0; ci < static_cast<long long>(nchunks); ++ci) {
    const std::size_t b = static_cast<std::size_t>(ci) * kChunk;
    const std::size_t e = std::min(b + kChunk, count);
    double m = 0.0;
    for (std::size_t i = b; i < e; ++i) m = std::max(m, f(i));
    partial[static_cast<std::size_t>(ci)] = m;
  }
  double m = 0.0;
  for (double p : partial) m = std::max(m, p);
  return m;
}

// Elementwise map: out[i] = f(i). Parallel and serial paths are bit-identical.
template <class F>
void map_elements(std::size_t count, F&& f) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < static_cast<long long>(count); ++i)
    f(static_cast<std::size_t>(i));
}

template <class F>
void map_elements_serial(std::size_t count, F&& f) {
  for (std::size_t i = 0; i < count; ++i) f(i);
}

double sum(std::span<const double> x);
double sum_serial(std::span<const double> x);

// sum of |x_i|^p
double sum_abs_pow(std::span<const double> x, double p);
double sum_abs_pow_serial(std::span<const double> x, double p);

double max_abs(std::span<const double> x);
double max_abs_serial(std::span<const double> x);

// sum of Re(conj(a_i) * b_i)
double dot_real(std::span<const std::complex<double>> a,
                std::span<const std::complex<double>> b);
double dot_real_serial(std::span<const std::complex<double>> a,
                       std::span<const std::complex<double>> b);

double sum_abs2(std::span<const std::complex<double>> a);

bool all_finite(std::span<const double> x);
bool all_finite(std::span<const std::complex<double>> x);

// out = a .* b (physical-space products)
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
void multiply_serial(std::span<const double> a, std::span<const double> b, std::span<double> out);

// out = a .* b + c .* d (fused advection assembly u1*df1 + u2*df2)
void multiply_add_pair(std::span<const double> a, std::span<const double> b,
                       std::span<const double> c, std::span<const double> d,
                       std::span<double> out);
void multiply_add_pair_serial(std::span<const double> a, std::span<const double> b,
                              std::span<const double> c, std::span<const double> d,
                              std::span<double> out);

int thread_count();

}  // namespace ccnv::kern
