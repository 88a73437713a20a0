#include "ccnv/fft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ccnv {

namespace {

std::shared_ptr<const FftPlan> build_plan(int n) {
  if (n < 2 || (n & (n - 1)) != 0) throw std::invalid_argument("fft: length must be a power of two");
  auto plan = std::make_shared<FftPlan>();
  plan->n = n;
  plan->bitrev.resize(n);
  int log2n = 0;
  while ((1 << log2n) < n) ++log2n;
  for (int i = 0; i < n; ++i) {
    int r = 0;
    for (int b = 0; b < log2n; ++b)
      if (i & (1 << b)) r |= 1 << (log2n - 1 - b);
    plan->bitrev[i] = r;
  }
  plan->twiddle.resize(n - 1);
  plan->twiddle_inv.resize(n - 1);
  std::size_t off = 0;
  for (int len = 2; len <= n; len <<= 1) {
    const int half = len / 2;
    for (int j = 0; j < half; ++j) {
      const double ang = -2.0 * std::numbers::pi * j / len;
      plan->twiddle[off + j] = {std::cos(ang), std::sin(ang)};
      plan->twiddle_inv[off + j] = {std::cos(ang), -std::sin(ang)};
    }
    off += half;
  }
  return plan;
}

std::mutex plan_mutex;
std::map<int, std::shared_ptr<const FftPlan>> plan_cache;

}  // namespace

const FftPlan& fft_plan(int n) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto it = plan_cache.find(n);
  if (it == plan_cache.end()) it = plan_cache.emplace(n, build_plan(n)).first;
  return *it->second;
}

void fft1d(std::complex<double>* a, const FftPlan& plan, int sign) {
  const int n = plan.n;
  for (int i = 0; i < n; ++i) {
    const int r = plan.bitrev[i];
    if (i < r) std::swap(a[i], a[r]);
  }
  const std::vector<std::complex<double>>& table = sign < 0 ? plan.twiddle : plan.twiddle_inv;
  // Butterflies on unpacked doubles; complex operator* would lower to the
  // Annex-G library call in the innermost loop.
  double* d = reinterpret_cast<double*>(a);
  std::size_t off = 0;
  for (int len = 2; len <= n; len <<= 1) {
    const int half = len / 2;
    const std::complex<double>* tw = table.data() + off;
    for (int base = 0; base < n; base += len) {
      for (int j = 0; j < half; ++j) {
        const double wr = tw[j].real();
        const double wi = tw[j].imag();
        double* lo = d + 2 * (base + j);
        double* hi = d + 2 * (base + j + half);
        const double vr = hi[0] * wr - hi[1] * wi;
        const double vi = hi[0] * wi + hi[1] * wr;
        const double ur = lo[0];
        const double ui = lo[1];
        lo[0] = ur + vr;
        lo[1] = ui + vi;
        hi[0] = ur - vr;
        hi[1] = ui - vi;
      }
    }
    off += half;
  }
}

namespace {

template <bool Parallel>
void fft2d_impl(std::complex<double>* a, int n, int sign) {
  const FftPlan& plan = fft_plan(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (Parallel)
#endif
  for (int r = 0; r < n; ++r) fft1d(a + static_cast<std::size_t>(r) * n, plan, sign);

#ifdef _OPENMP
#pragma omp parallel if (Parallel)
#endif
  {
    std::vector<std::complex<double>> col(n);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (int c = 0; c < n; ++c) {
      for (int r = 0; r < n; ++r) col[r] = a[static_cast<std::size_t>(r) * n + c];
      fft1d(col.data(), plan, sign);
      for (int r = 0; r < n; ++r) a[static_cast<std::size_t>(r) * n + c] = col[r];
    }
  }
}

}  // namespace

void fft2d(std::complex<double>* a, int n, int sign) { fft2d_impl<true>(a, n, sign); }

void fft2d_serial(std::complex<double>* a, int n, int sign) { fft2d_impl<false>(a, n, sign); }

}  // namespace ccnv
