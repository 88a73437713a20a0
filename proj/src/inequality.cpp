#include "ccnv/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ccnv/kernels.hpp"
#include "ccnv/ops.hpp"

namespace ccnv {

namespace {

double inv(double p) { return p == kInf ? 0.0 : 1.0 / p; }

InequalityReport make_report(std::string name, double lhs, double rhs) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs_without_constant = rhs;
  if (rhs > 0.0) {
    r.ratio = lhs / rhs;
  } else {
    r.degenerate = true;
    r.ratio = 0.0;
  }
  return r;
}

RealField pointwise_product(const SpectralField& a, const SpectralField& b) {
  const RealField pa = to_physical(a);
  const RealField pb = to_physical(b);
  RealField out(a.grid);
  kern::multiply(pa.values, pb.values, out.values);
  return out;
}

SpectralField dealiased_product(const SpectralField& a, const SpectralField& b) {
  SpectralField out = transform_forward(pointwise_product(a, b));
  dealias(out);
  return out;
}

}  // namespace

EnsembleStats ensemble_stats(std::vector<InequalityReport> reports) {
  EnsembleStats st;
  std::vector<double> ratios;
  for (const auto& r : reports) {
    if (r.degenerate) {
      ++st.degenerate_count;
      continue;
    }
    ratios.push_back(r.ratio);
  }
  st.count = static_cast<int>(ratios.size());
  if (ratios.empty()) return st;
  std::sort(ratios.begin(), ratios.end());
  st.min = ratios.front();
  st.max = ratios.back();
  st.median = ratios[ratios.size() / 2];
  return st;
}

InequalityReport bernstein_check(const SpectralField& f, int j, double alpha, double p, double q,
                                 const DyadicPartition& P) {
  if (!(p >= 2.0 && (q == kInf || q >= p)))
    throw std::invalid_argument("bernstein_check: need 2 <= p <= q <= inf");
  if (j < 0 || j > P.j_max) throw std::invalid_argument("bernstein_check: j outside [0, j_max]");

  // Annulus support per the dyadic profile: |k| in 2^j * [3/4, 8/3].
  const int n = f.grid.n;
  double cmax = 0.0;
  for (const auto& c : f.coeffs) cmax = std::max(cmax, std::abs(c));
  const double lo = 0.75 * (1 << j), hi = (8.0 / 3.0) * (1 << j);
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (std::abs(f.coeffs[i]) <= 1e-13 * cmax) continue;
    const int k1 = f.grid.wavenumber(static_cast<int>(i) / n);
    const int k2 = f.grid.wavenumber(static_cast<int>(i) % n);
    const double kk = std::sqrt(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
    if (kk < lo * (1.0 - 1e-12) || kk > hi * (1.0 + 1e-12))
      throw std::invalid_argument("bernstein_check: f is not annulus-supported at level j");
  }

  const SpectralField lf = multiplier_lambda(f, 2.0 * alpha);
  const double lhs = lp_norm(lf, q);
  const double fp = lp_norm(f, p);
  const double fq = (q == p) ? fp : lp_norm(f, q);
  const double weight = std::pow(2.0, 2.0 * alpha * j + 2.0 * j * (inv(p) - inv(q)));
  InequalityReport r = make_report("bernstein", lhs, weight * fp);
  const double lower_rhs = std::pow(2.0, 2.0 * alpha * j) * fq;
  r.lower_ratio = lower_rhs > 0.0 ? lhs / lower_rhs : 0.0;
  return r;
}

SpectralField lambda_commutator(const SpectralField& f, const SpectralField& g, double s) {
  if (!(s > 0.0 && s <= 2.0)) throw std::invalid_argument("lambda_commutator: s outside (0, 2]");
  SpectralField comm = multiplier_lambda(dealiased_product(f, g), s) -
                       dealiased_product(f, multiplier_lambda(g, s));
  // The difference can cancel to rounding level; restore exact symmetry so
  // the result still represents a real field.
  hermitian_project(comm);
  return comm;
}

InequalityReport lambda_commutator_check(const SpectralField& f, const SpectralField& g, double s,
                                         double r, double p1, double q1, double p2, double q2) {
  if (std::abs(inv(r) - inv(p1) - inv(q1)) > 1e-12 ||
      std::abs(inv(r) - inv(p2) - inv(q2)) > 1e-12)
    throw std::invalid_argument("lambda_commutator_check: exponent relation 1/r = 1/p1+1/q1 = 1/p2+1/q2 violated");

  const SpectralField comm = lambda_commutator(f, g, s);
  const double lhs = lp_norm(comm, r);

  const RealField f1 = to_physical(partial_derivative(f, 1));
  const RealField f2 = to_physical(partial_derivative(f, 2));
  const double grad_f = lp_norm_magnitude(f1, f2, p1);
  const double g_low = lp_norm(multiplier_lambda(g, s - 1.0), q1);
  const double f_high = lp_norm(multiplier_lambda(f, s), p2);
  const double g_plain = lp_norm(g, q2);
  return make_report("lambda_commutator", lhs, grad_f * g_low + f_high * g_plain);
}

RieszCommutatorReports riesz_commutator_check(const VectorField& u, const SpectralField& theta,
                                              double p, const DyadicPartition& P) {
  if (!(p > 1.0 && p != kInf))
    throw std::invalid_argument("riesz_commutator_check: p must lie in (1, inf)");

  const SpectralField comm = riesz_commutator(u, theta);

  RieszCommutatorReports out;
  {
    const RealField du1_1 = to_physical(partial_derivative(u.u1, 1));
    const RealField du1_2 = to_physical(partial_derivative(u.u1, 2));
    const RealField du2_1 = to_physical(partial_derivative(u.u2, 1));
    const RealField du2_2 = to_physical(partial_derivative(u.u2, 2));
    RealField mag(u.u1.grid);
    kern::map_elements(mag.values.size(), [&](std::size_t i) {
      mag.values[i] = std::sqrt(du1_1.values[i] * du1_1.values[i] +
                                du1_2.values[i] * du1_2.values[i] +
                                du2_1.values[i] * du2_1.values[i] +
                                du2_2.values[i] * du2_2.values[i]);
    });
    out.lp_part = make_report("riesz_commutator_lp", lp_norm(comm, p),
                              lp_norm(mag, p) * lp_norm(theta, kInf));
  }
  {
    const SpectralField W = curl(u);
    const double lhs = besov_norm(comm, {0.0, kInf, 1.0}, P);
    const double rhs = (lp_norm(W, kInf) + lp_norm(W, p)) *
                       (besov_norm(theta, {0.5, kInf, 1.0}, P) + lp_norm(theta, p));
    out.besov_part = make_report("riesz_commutator_besov", lhs, rhs);
  }
  return out;
}

InequalityReport block_commutator_check(const VectorField& u, const SpectralField& theta,
                                        int q_block, double p, const DyadicPartition& P) {
  if (q_block < -1 || q_block > P.j_max)
    throw std::invalid_argument("block_commutator_check: invalid block index");
  double cmax = 0.0;
  for (const auto& c : u.u1.coeffs) cmax = std::max(cmax, std::abs(c));
  for (const auto& c : u.u2.coeffs) cmax = std::max(cmax, std::abs(c));
  if (max_divergence(u) > 1e-12 * std::max(cmax, 1e-300))
    throw std::invalid_argument("block_commutator_check: u is not divergence-free");

  SpectralField comm =
      block(advect(u, theta), q_block, P) - advect(u, block(theta, q_block, P));
  hermitian_project(comm);
  const RealField du1_1 = to_physical(partial_derivative(u.u1, 1));
  const RealField du1_2 = to_physical(partial_derivative(u.u1, 2));
  const RealField du2_1 = to_physical(partial_derivative(u.u2, 1));
  const RealField du2_2 = to_physical(partial_derivative(u.u2, 2));
  RealField mag(u.u1.grid);
  kern::map_elements(mag.values.size(), [&](std::size_t i) {
    mag.values[i] = std::sqrt(du1_1.values[i] * du1_1.values[i] +
                              du1_2.values[i] * du1_2.values[i] +
                              du2_1.values[i] * du2_1.values[i] +
                              du2_2.values[i] * du2_2.values[i]);
  });
  return make_report("block_commutator", lp_norm(comm, p),
                     lp_norm(mag, p) * besov_norm(theta, {0.0, kInf, kInf}, P));
}

double positivity_gap(const RealField& f, double s, int p) {
  if (!(s >= 0.0 && s <= 2.0)) throw std::invalid_argument("positivity_gap: s outside [0, 2]");
  if (p < 2 || p % 2 != 0 || p > 8)
    throw std::invalid_argument("positivity_gap: p must be one of {2, 4, 6, 8}");

  const SpectralField F = transform_forward(f);
  const SpectralField F2 = oversample2(F);
  const RealField f2 = to_physical(F2);
  const RealField lf2 = to_physical(oversample2(multiplier_lambda(F, s)));

  // int |f|^{p-2} f Lambda^s f, collocation on the doubled grid.
  const double area = f2.grid.cell_area();
  const double A = area * kern::reduce_sum(f2.values.size(), [&](std::size_t i) {
    const double v = f2.values[i];
    const double vp2 = std::pow(std::abs(v), p - 2);
    return vp2 * v * lf2.values[i];
  });

  // Signed half power, sampled pointwise, then analyzed spectrally. The
  // sampled power is not band-limited; for s > 0 the top third of the doubled
  // lattice is dropped where the Lambda weight would amplify its aliased
  // tail. At s = 0 the full spectrum is kept: the gap then reduces exactly to
  // (1 - 2/p) of the |f|^p quadrature by Plancherel.
  RealField vfield(f2.grid);
  kern::map_elements(vfield.values.size(), [&](std::size_t i) {
    const double v = f2.values[i];
    vfield.values[i] = (v < 0.0 ? -1.0 : 1.0) * std::pow(std::abs(v), 0.5 * p);
  });
  SpectralField V = transform_forward(vfield);
  if (s > 0.0) dealias(V);
  const double half_norm = s == 0.0 ? l2_norm(V) : lambda_l2_norm(V, 0.5 * s);
  return A - (2.0 / p) * half_norm * half_norm;
}

InequalityReport log_sobolev_check(const SpectralField& f, double s, const DyadicPartition& P) {
  if (!(s > 2.0)) throw std::invalid_argument("log_sobolev_check: requires s > 2");
  const SpectralField g1 = partial_derivative(f, 1);
  const SpectralField g2 = partial_derivative(f, 2);
  const RealField p1 = to_physical(g1);
  const RealField p2 = to_physical(g2);
  const double lhs = lp_norm_magnitude(p1, p2, kInf);
  const double grad_l2 = lambda_l2_norm(f, 1.0);

  double besov_sup = 0.0;
  for (int j = -1; j <= P.j_max; ++j) {
    const RealField b1 = to_physical(block(g1, j, P));
    const RealField b2 = to_physical(block(g2, j, P));
    besov_sup = std::max(besov_sup, lp_norm_magnitude(b1, b2, kInf));
  }
  const double rhs = grad_l2 + besov_sup * std::log(std::numbers::e + lambda_l2_norm(f, s));
  return make_report("log_sobolev", lhs, rhs);
}

HeatDecayReport heat_decay_check(const SpectralField& f, double s, double p, double q) {
  if (!(s > 0.0)) throw std::invalid_argument("heat_decay_check: s must be > 0");
  if (!(p >= 1.0 && (q == kInf || q >= p)))
    throw std::invalid_argument("heat_decay_check: need 1 <= p <= q <= inf");
  if (std::abs(f.mean()) > 1e-13)
    throw std::invalid_argument("heat_decay_check: f must be mean-free");

  HeatDecayReport rep;
  rep.bound = -0.5 * s - (inv(p) - inv(q));

  // Detect single-shell support: the decay is then a pure exponential, not a
  // power law, and the check compares against it directly.
  const int n = f.grid.n;
  double cmax = 0.0;
  for (const auto& c : f.coeffs) cmax = std::max(cmax, std::abs(c));
  double shell = -1.0;
  bool single_shell = cmax > 0.0;
  for (std::size_t i = 0; i < f.coeffs.size() && single_shell; ++i) {
    if (std::abs(f.coeffs[i]) <= 1e-13 * cmax) continue;
    const int k1 = f.grid.wavenumber(static_cast<int>(i) / n);
    const int k2 = f.grid.wavenumber(static_cast<int>(i) % n);
    const double k2sum = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
    if (shell < 0.0)
      shell = k2sum;
    else if (std::abs(k2sum - shell) > 1e-9)
      single_shell = false;
  }

  const double t_lo = 4.0 / (static_cast<double>(n) * n);
  const double t_hi = 0.25;
  if (!(t_lo < t_hi)) throw std::invalid_argument("heat_decay_check: degenerate t-window");
  constexpr int kSamples = 12;
  const SpectralField lf = multiplier_lambda(f, s);
  const double base_norm = lp_norm(lf, q);

  for (int i = 0; i < kSamples; ++i) {
    const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (kSamples - 1));
    rep.times.push_back(t);
    rep.norms.push_back(lp_norm(heat_semigroup(lf, t), q));
  }

  if (single_shell && shell > 0.0) {
    rep.exact_mode = true;
    for (int i = 0; i < kSamples; ++i) {
      const double expect = std::exp(-shell * rep.times[i]) * base_norm;
      rep.max_rel_err = std::max(
          rep.max_rel_err, std::abs(rep.norms[i] - expect) / std::max(expect, 1e-300));
    }
    return rep;
  }

  // Least-squares slope of log norm vs log t.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (int i = 0; i < kSamples; ++i) {
    if (rep.norms[i] <= 0.0) continue;
    const double x = std::log(rep.times[i]);
    const double y = std::log(rep.norms[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2) throw std::invalid_argument("heat_decay_check: degenerate t-window");
  rep.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return rep;
}

}  // namespace ccnv
