#include "ccnv/random_fields.hpp"

#include <cmath>

#include "ccnv/ops.hpp"

namespace ccnv {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

double uniform_open(std::uint64_t bits) {
  // (0, 1): top 53 bits, offset by half an ulp so log() below stays finite.
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Standard complex Gaussian for mode k, reproducible for any traversal.
Complex mode_gaussian(std::uint64_t seed, int k1, int k2) {
  const std::uint64_t key = seed ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(k1)) << 32 |
                                    static_cast<std::uint32_t>(k2));
  const std::uint64_t a = splitmix64(key);
  const std::uint64_t b = splitmix64(a ^ 0xd1b54a32d192ed03ULL);
  const double u1 = uniform_open(a);
  const double u2 = uniform_open(b);
  const double r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

template <class Amp>
SpectralField hermitian_band_field(const GridSpec& g, std::uint64_t seed, double kmin, double kmax,
                                   Amp&& amp) {
  g.validate();
  SpectralField f(g);
  const int half = g.n / 2;
  // Fill the k2 > 0 half plane plus the k2 = 0, k1 > 0 half line; mirror the rest.
  for (int k1 = -half + 1; k1 < half; ++k1) {
    for (int k2 = 0; k2 < half; ++k2) {
      if (k2 == 0 && k1 <= 0) continue;
      const double kk = std::sqrt(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
      if (kk < kmin || kk > kmax) continue;
      const Complex z = std::sqrt(0.5) * amp(kk) * mode_gaussian(seed, k1, k2);
      f.mode(k1, k2) = z;
      f.mode(-k1, -k2) = std::conj(z);
    }
  }
  dealias(f);
  return f;
}

}  // namespace

SpectralField random_power_law_field(const GridSpec& g, std::uint64_t seed, double gamma,
                                     double kmin, double kmax, double amplitude) {
  return hermitian_band_field(g, seed, kmin, kmax, [gamma, amplitude](double kk) {
    return amplitude * std::pow(kk, -gamma);
  });
}

SpectralField flat_band_field(const GridSpec& g, std::uint64_t seed, double kmin, double kmax,
                              double amplitude) {
  return hermitian_band_field(g, seed, kmin, kmax,
                              [amplitude](double) { return amplitude; });
}

SpectralField aligned_band_field(const GridSpec& g, std::uint64_t seed, double kmin, double kmax,
                                 double amplitude) {
  g.validate();
  SpectralField f(g);
  const int half = g.n / 2;
  for (int k1 = -half + 1; k1 < half; ++k1) {
    for (int k2 = 0; k2 < half; ++k2) {
      if (k2 == 0 && k1 <= 0) continue;
      const double kk = std::sqrt(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
      if (kk < kmin || kk > kmax) continue;
      const double mag = amplitude * std::abs(mode_gaussian(seed, k1, k2).real());
      f.mode(k1, k2) = mag;
      f.mode(-k1, -k2) = mag;
    }
  }
  dealias(f);
  return f;
}

SpectralField cosine_mode(const GridSpec& g, int k1, int k2, double amplitude, double phase) {
  g.validate();
  SpectralField f(g);
  const Complex half_amp = 0.5 * amplitude * Complex(std::cos(phase), std::sin(phase));
  f.mode(k1, k2) += half_amp;
  f.mode(-k1, -k2) += std::conj(half_amp);
  return f;
}

}  // namespace ccnv
