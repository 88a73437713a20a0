#pragma once

#include <cstdint>

#include "ccnv/field.hpp"

namespace ccnv {

// Deterministic per-mode Gaussian draws: each coefficient is a pure function
// of (seed, k1, k2), so a realization is independent of traversal order and
// thread count, and grids of different size share the coefficients of their
// common modes. That makes refinement studies compare the same underlying
// field with extra scales added.
std::uint64_t splitmix64(std::uint64_t x);

// Hermitian field with power-law amplitude |k|^{-gamma} on kmin <= |k| <= kmax
// (radial), zero mean, dealiased. Gaussian complex coefficients.
SpectralField random_power_law_field(const GridSpec& g, std::uint64_t seed, double gamma,
                                     double kmin, double kmax, double amplitude);

// Hermitian field with unit amplitude on the band (random phases).
SpectralField flat_band_field(const GridSpec& g, std::uint64_t seed, double kmin, double kmax,
                              double amplitude);

// Random magnitudes with aligned phases: the field peaks at the origin, which
// makes it the L^inf-extremizing family for band-limited estimates.
SpectralField aligned_band_field(const GridSpec& g, std::uint64_t seed, double kmin, double kmax,
                                 double amplitude);

// Real single-mode helpers for analytic tests: amplitude * cos(k.x + phase).
SpectralField cosine_mode(const GridSpec& g, int k1, int k2, double amplitude,
                          double phase = 0.0);

}  // namespace ccnv
