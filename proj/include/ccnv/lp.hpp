#pragma once

#include <span>
#include <vector>

#include "ccnv/field.hpp"

namespace ccnv {

// Dyadic frequency decomposition resolved on the grid's integer lattice.
//
// The radial low-pass profile is chi(r) = 1 for r <= 3/4, a cosine-squared
// taper on (3/4, 4/3], and 0 beyond; the annular profiles are
// phi_j(r) = chi(r/2^{j+1}) - chi(r/2^j). The sums telescope, so
// chi + sum_{j<=J} phi_j = chi(r/2^{J+1}) and the partition of unity is exact
// on every resolved mode once 2^{j_max} = n/2 (the top profile then covers the
// lattice corners at |k| ~ n/sqrt(2)).
struct DyadicPartition {
  GridSpec grid;
  int j_max = 0;                               // largest j with 2^j <= n/2
  std::vector<double> chi_mask;                // per-mode chi(|k|), the j = -1 block
  std::vector<std::vector<double>> phi_masks;  // per-mode phi_j(|k|), j = 0..j_max

  static DyadicPartition make(const GridSpec& g);

  static double chi_profile(double r);
  static double phi_profile(int j, double r);
};

// Frequency projection onto the j-th dyadic block; j = -1 is the low-pass
// block. Throws for j outside [-1, j_max].
SpectralField block(const SpectralField& f, int j, const DyadicPartition& P);

// Sum of blocks -1 .. j-1 (equivalently the chi(|k|/2^j) low pass).
// Valid for j in [0, j_max+1]; j = j_max+1 reproduces every resolved mode.
SpectralField low_pass(const SpectralField& f, int j, const DyadicPartition& P);

struct BesovIndex {
  double s = 0.0;  // regularity
  double p = 2.0;  // integrability exponent, >= 1 or inf
  double q = 2.0;  // summation exponent, >= 1 or inf
};

double besov_norm(const SpectralField& f, const BesovIndex& idx, const DyadicPartition& P);

enum class SpacetimeFlavor { plain, tilde };

// Space-time norm of a sampled trajectory. Weights are positive quadrature
// weights summing to the time horizon (see trapezoid_weights). The plain
// flavor time-integrates per-snapshot Besov norms; the tilde flavor swaps the
// order, l^q over blocks of time-integrated block norms.
double spacetime_besov(std::span<const SpectralField> fields, std::span<const double> weights,
                       double r, const BesovIndex& idx, const DyadicPartition& P,
                       SpacetimeFlavor flavor);

std::vector<double> trapezoid_weights(std::span<const double> times);

}  // namespace ccnv
