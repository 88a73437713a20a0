#include "ccnv/lp.hpp"

#include <cmath>
#include <stdexcept>

#include "ccnv/kernels.hpp"
#include "ccnv/ops.hpp"

namespace ccnv {

double DyadicPartition::chi_profile(double r) {
  constexpr double lo = 3.0 / 4.0;
  constexpr double hi = 4.0 / 3.0;
  if (r <= lo) return 1.0;
  if (r > hi) return 0.0;
  const double c = std::cos(0.5 * std::numbers::pi * (r - lo) / (hi - lo));
  return c * c;
}

double DyadicPartition::phi_profile(int j, double r) {
  const double scale = static_cast<double>(1 << j);
  return chi_profile(r / (2.0 * scale)) - chi_profile(r / scale);
}

DyadicPartition DyadicPartition::make(const GridSpec& g) {
  g.validate();
  DyadicPartition P;
  P.grid = g;
  P.j_max = 0;
  while ((2 << P.j_max) <= g.n / 2) ++P.j_max;  // 2^{j_max} = n/2
  const int n = g.n;
  auto radius = [&](std::size_t i) {
    const int k1 = g.wavenumber(static_cast<int>(i) / n);
    const int k2 = g.wavenumber(static_cast<int>(i) % n);
    return std::sqrt(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
  };
  P.chi_mask.resize(g.size());
  for (std::size_t i = 0; i < P.chi_mask.size(); ++i) P.chi_mask[i] = chi_profile(radius(i));
  P.phi_masks.resize(P.j_max + 1);
  for (int j = 0; j <= P.j_max; ++j) {
    P.phi_masks[j].resize(g.size());
    for (std::size_t i = 0; i < P.phi_masks[j].size(); ++i)
      P.phi_masks[j][i] = phi_profile(j, radius(i));
  }
  return P;
}

namespace {

const std::vector<double>& mask_for(int j, const DyadicPartition& P) {
  if (j < -1 || j > P.j_max) throw std::invalid_argument("block: index outside [-1, j_max]");
  return j == -1 ? P.chi_mask : P.phi_masks[j];
}

}  // namespace

SpectralField block(const SpectralField& f, int j, const DyadicPartition& P) {
  if (!(f.grid == P.grid)) throw std::invalid_argument("block: grid mismatch");
  const std::vector<double>& mask = mask_for(j, P);
  SpectralField out(f.grid);
  kern::map_elements(f.coeffs.size(), [&](std::size_t i) { out.coeffs[i] = mask[i] * f.coeffs[i]; });
  return out;
}

SpectralField low_pass(const SpectralField& f, int j, const DyadicPartition& P) {
  if (j < 0 || j > P.j_max + 1) throw std::invalid_argument("low_pass: index outside [0, j_max+1]");
  if (!(f.grid == P.grid)) throw std::invalid_argument("low_pass: grid mismatch");
  // Telescoping: sum of blocks -1..j-1 equals the chi(|k|/2^j) cutoff.
  const int n = f.grid.n;
  const double scale = static_cast<double>(1 << j);
  SpectralField out(f.grid);
  kern::map_elements(f.coeffs.size(), [&](std::size_t i) {
    const int k1 = f.grid.wavenumber(static_cast<int>(i) / n);
    const int k2 = f.grid.wavenumber(static_cast<int>(i) % n);
    const double r = std::sqrt(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
    out.coeffs[i] = DyadicPartition::chi_profile(r / scale) * f.coeffs[i];
  });
  return out;
}

namespace {

double lq_combine(std::span<const double> weighted, double q) {
  if (q == kInf) {
    double m = 0.0;
    for (double v : weighted) m = std::max(m, v);
    return m;
  }
  kern::Accum a;
  for (double v : weighted) a.add(std::pow(v, q));
  return std::pow(a.get(), 1.0 / q);
}

void check_index(const BesovIndex& idx) {
  if (!(idx.p >= 1.0) || !(idx.q >= 1.0))
    throw std::invalid_argument("besov: p and q must be >= 1 (or infinity)");
}

}  // namespace

double besov_norm(const SpectralField& f, const BesovIndex& idx, const DyadicPartition& P) {
  check_index(idx);
  std::vector<double> weighted(P.j_max + 2);
  for (int j = -1; j <= P.j_max; ++j)
    weighted[j + 1] = std::pow(2.0, j * idx.s) * lp_norm(block(f, j, P), idx.p);
  return lq_combine(weighted, idx.q);
}

std::vector<double> trapezoid_weights(std::span<const double> times) {
  const std::size_t m = times.size();
  if (m == 0) throw std::invalid_argument("trapezoid_weights: empty series");
  std::vector<double> w(m, 0.0);
  if (m == 1) return w;
  w[0] = 0.5 * (times[1] - times[0]);
  for (std::size_t i = 1; i + 1 < m; ++i) w[i] = 0.5 * (times[i + 1] - times[i - 1]);
  w[m - 1] = 0.5 * (times[m - 1] - times[m - 2]);
  return w;
}

double spacetime_besov(std::span<const SpectralField> fields, std::span<const double> weights,
                       double r, const BesovIndex& idx, const DyadicPartition& P,
                       SpacetimeFlavor flavor) {
  check_index(idx);
  if (fields.empty()) throw std::invalid_argument("spacetime_besov: empty series");
  if (fields.size() != weights.size())
    throw std::invalid_argument("spacetime_besov: weights/fields size mismatch");
  for (double w : weights)
    if (!(w > 0.0)) throw std::invalid_argument("spacetime_besov: weights must be positive");
  if (!(r >= 1.0)) throw std::invalid_argument("spacetime_besov: r must be >= 1 (or infinity)");

  const std::size_t m = fields.size();
  auto time_combine = [&](std::span<const double> vals) {
    if (r == kInf) {
      double mx = 0.0;
      for (double v : vals) mx = std::max(mx, v);
      return mx;
    }
    kern::Accum a;
    for (std::size_t i = 0; i < m; ++i) a.add(weights[i] * std::pow(vals[i], r));
    return std::pow(a.get(), 1.0 / r);
  };

  if (flavor == SpacetimeFlavor::plain) {
    std::vector<double> per_snapshot(m);
    for (std::size_t i = 0; i < m; ++i) per_snapshot[i] = besov_norm(fields[i], idx, P);
    return time_combine(per_snapshot);
  }

  // tilde: per block, time-integrate the L^p block norms, then l^q over j.
  std::vector<double> weighted(P.j_max + 2);
  std::vector<double> vals(m);
  for (int j = -1; j <= P.j_max; ++j) {
    for (std::size_t i = 0; i < m; ++i) vals[i] = lp_norm(block(fields[i], j, P), idx.p);
    weighted[j + 1] = std::pow(2.0, j * idx.s) * time_combine(vals);
  }
  return lq_combine(weighted, idx.q);
}

}  // namespace ccnv
