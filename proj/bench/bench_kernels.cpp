// Times the OpenMP kernel paths against their serial references and checks
// that the outputs agree. Usage: ccnv_bench [n ...]  (default 128 256)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "ccnv/fft.hpp"
#include "ccnv/kernels.hpp"
#include "ccnv/ops.hpp"
#include "ccnv/random_fields.hpp"
#include "ccnv/solver.hpp"

using namespace ccnv;

namespace {

template <class F>
double best_ms(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    best = std::min(best, ms);
  }
  return best;
}

void row(const char* name, double serial_ms, double parallel_ms, double diff) {
  std::printf("%-22s %10.3f %10.3f %8.2fx   %.1e\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms, diff);
}

void bench_grid(int n) {
  GridSpec g;
  g.n = n;
  const SpectralField f = random_power_law_field(g, 1, 1.0, 1.0, g.dealias_limit(), 1.0);
  const RealField fp = to_physical(f);
  const int reps = n <= 128 ? 40 : 10;

  std::printf("n = %d, threads = %d\n", n, kern::thread_count());
  std::printf("%-22s %10s %10s %9s   %s\n", "kernel", "serial ms", "omp ms", "speedup",
              "max|diff|");

  {
    std::vector<Complex> a(f.coeffs), b(f.coeffs);
    const double ts = best_ms(reps, [&] { fft2d_serial(b.data(), n, +1); });
    const double tp = best_ms(reps, [&] { fft2d(a.data(), n, +1); });
    // Same butterflies per line either way; results must match bitwise.
    std::vector<Complex> a2(f.coeffs), b2(f.coeffs);
    fft2d(a2.data(), n, +1);
    fft2d_serial(b2.data(), n, +1);
    double diff = 0.0;
    for (std::size_t i = 0; i < a2.size(); ++i) diff = std::max(diff, std::abs(a2[i] - b2[i]));
    row("fft2d", ts, tp, diff);
  }
  {
    RealField out_s(g), out_p(g);
    const double ts =
        best_ms(reps, [&] { kern::multiply_serial(fp.values, fp.values, out_s.values); });
    const double tp = best_ms(reps, [&] { kern::multiply(fp.values, fp.values, out_p.values); });
    double diff = 0.0;
    for (std::size_t i = 0; i < out_s.values.size(); ++i)
      diff = std::max(diff, std::abs(out_s.values[i] - out_p.values[i]));
    row("pointwise multiply", ts, tp, diff);
  }
  {
    volatile double sink = 0.0;
    const double ts = best_ms(reps, [&] { sink = kern::sum_abs_pow_serial(fp.values, 2.0); });
    const double tp = best_ms(reps, [&] { sink = kern::sum_abs_pow(fp.values, 2.0); });
    const double diff = std::abs(kern::sum_abs_pow(fp.values, 2.0) -
                                 kern::sum_abs_pow_serial(fp.values, 2.0));
    row("sum |v|^2 (comp.)", ts, tp, diff);
    (void)sink;
  }
  {
    volatile double sink = 0.0;
    const double ts = best_ms(reps, [&] { sink = kern::max_abs_serial(fp.values); });
    const double tp = best_ms(reps, [&] { sink = kern::max_abs(fp.values); });
    const double diff = std::abs(kern::max_abs(fp.values) - kern::max_abs_serial(fp.values));
    row("max |v|", ts, tp, diff);
    (void)sink;
  }
  {
    volatile double sink = 0.0;
    const double ts = best_ms(reps, [&] { sink = kern::dot_real_serial(f.coeffs, f.coeffs); });
    const double tp = best_ms(reps, [&] { sink = kern::dot_real(f.coeffs, f.coeffs); });
    const double diff =
        std::abs(kern::dot_real(f.coeffs, f.coeffs) - kern::dot_real_serial(f.coeffs, f.coeffs));
    row("dot product (comp.)", ts, tp, diff);
    (void)sink;
  }

  // Composite throughput context (parallel path only).
  {
    State s(g);
    s.Omega = random_power_law_field(g, 2, 2.0, 1.0, 8.0, 0.3);
    s.theta = random_power_law_field(g, 3, 2.0, 1.0, 8.0, 0.3);
    StepperConfig cfg;
    cfg.dt_max = 1e-3;
    const double tp = best_ms(std::max(reps / 4, 3), [&] {
      StepResult r = step(s, Params{}, cfg, 1e-3);
      s = std::move(r.state);
    });
    std::printf("%-22s %10s %10.3f\n", "full IF-RK2 step", "-", tp);
  }
  std::printf("\n");
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> sizes;
  for (int i = 1; i < argc; ++i) sizes.push_back(std::atoi(argv[i]));
  if (sizes.empty()) sizes = {128, 256};
  for (int n : sizes) bench_grid(n);
  return 0;
}
