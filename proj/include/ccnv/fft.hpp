#pragma once

#include <complex>
#include <vector>

namespace ccnv {

// Iterative radix-2 transform tables for one line length. Grids are powers of
// two by construction, so no other radix is needed. Tables are built once per
// size and shared; concurrent readers are safe after construction.
struct FftPlan {
  int n = 0;
  std::vector<int> bitrev;                        // size n
  std::vector<std::complex<double>> twiddle;      // e^{-2*pi*i*j/len}, stages len=2..n, n-1 entries
  std::vector<std::complex<double>> twiddle_inv;  // conjugates, kept separately for the inverse pass
};

const FftPlan& fft_plan(int n);

// In-place 1D transform of length plan.n; sign=-1 forward, sign=+1 inverse.
// No normalization.
void fft1d(std::complex<double>* a, const FftPlan& plan, int sign);

// In-place unnormalized 2D transform of an n*n row-major array: rows, then
// columns. Lines are independent, so the parallel path is bit-identical to
// the serial one.
void fft2d(std::complex<double>* a, int n, int sign);
void fft2d_serial(std::complex<double>* a, int n, int sign);

}  // namespace ccnv
