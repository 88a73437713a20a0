#include "ccnv/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ccnv/kernels.hpp"
#include "ccnv/ops.hpp"

namespace ccnv {

void DiagParams::validate() const {
  if (!(r > 4.0 && r != kInf)) throw std::invalid_argument("diagnostics.r: must lie in (4, inf)");
  if (!(k > 0.5 && k <= (r - 2.0) / r))
    throw std::invalid_argument("diagnostics.k: must lie in (1/2, (r-2)/r]");
  if (!(hs > 2.0)) throw std::invalid_argument("diagnostics.s: must be > 2");
}

bool DiagnosticsRecord::all_finite() const {
  for (double v : {t, u_inf, l2_u, l2_omega, l2_theta, l4_theta, l8_theta, linf_theta, hk_theta,
                   h1dot_theta, hs_u, hs_omega, hs_theta, lr_gamma, lr_omega, linf_Omega,
                   grad_omega_inf, grad_omega_l2, lambda_half_theta, lambda_k_half_theta,
                   lambda_3half_theta, int_grad_omega_sq, int_lambda_half_theta_sq,
                   int_lambda_k_half_theta_sq, int_lambda_3half_theta_sq, int_u_inf,
                   int_Omega_inf})
    if (!std::isfinite(v)) return false;
  return true;
}

DiagnosticsRecord record(const State& s, const DiagnosticsRecord* prev, const DiagParams& dp) {
  dp.validate();
  DiagnosticsRecord r;
  r.t = s.t;

  const VectorField u = biot_savart(s.Omega);
  const RealField u1 = to_physical(u.u1);
  const RealField u2 = to_physical(u.u2);
  r.u_inf = kern::reduce_max(u1.values.size(), [&](std::size_t i) {
    return std::hypot(u1.values[i], u2.values[i]);
  });
  // ||u||_2 via the stream-function weight.
  const int n = s.grid().n;
  r.l2_u = kTwoPi * std::sqrt(kern::reduce_sum(s.Omega.coeffs.size(), [&](std::size_t i) {
    const int k1 = s.grid().wavenumber(static_cast<int>(i) / n);
    const int k2 = s.grid().wavenumber(static_cast<int>(i) % n);
    const double k2sum = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
    return k2sum == 0.0 ? 0.0 : std::norm(s.Omega.coeffs[i]) / k2sum;
  }));
  r.l2_omega = l2_norm(s.omega);
  r.l2_theta = l2_norm(s.theta);

  const RealField theta_phys = to_physical(s.theta);
  r.l4_theta = lp_norm(theta_phys, 4.0);
  r.l8_theta = lp_norm(theta_phys, 8.0);
  r.linf_theta = lp_norm(theta_phys, kInf);

  r.hk_theta = lambda_l2_norm(s.theta, dp.k);
  r.h1dot_theta = lambda_l2_norm(s.theta, 1.0);
  r.hs_u = std::sqrt(kTwoPi * kTwoPi *
                     kern::reduce_sum(s.Omega.coeffs.size(), [&](std::size_t i) {
                       const int k1 = s.grid().wavenumber(static_cast<int>(i) / n);
                       const int k2 = s.grid().wavenumber(static_cast<int>(i) % n);
                       const double k2sum =
                           static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
                       if (k2sum == 0.0) return 0.0;
                       return std::pow(1.0 + k2sum, dp.hs) * std::norm(s.Omega.coeffs[i]) / k2sum;
                     }));
  r.hs_omega = sobolev_norm(s.omega, dp.hs);
  r.hs_theta = sobolev_norm(s.theta, dp.hs);

  const SpectralField gam = gamma(s);
  r.lr_gamma = lp_norm(gam, dp.r);
  r.lr_omega = lp_norm(s.omega, dp.r);
  r.linf_Omega = lp_norm(s.Omega, kInf);
  r.grad_omega_inf = max_abs(gradient_magnitude(s.omega));

  r.grad_omega_l2 = lambda_l2_norm(s.omega, 1.0);
  r.lambda_half_theta = lambda_l2_norm(s.theta, 0.5);
  r.lambda_k_half_theta = lambda_l2_norm(s.theta, dp.k + 0.5);
  r.lambda_3half_theta = lambda_l2_norm(s.theta, 1.5);

  if (prev) {
    const double dt = r.t - prev->t;
    if (dt < 0.0) throw std::invalid_argument("record: time went backwards");
    auto trap = [dt](double acc, double a, double b) { return acc + 0.5 * dt * (a + b); };
    r.int_grad_omega_sq = trap(prev->int_grad_omega_sq, prev->grad_omega_l2 * prev->grad_omega_l2,
                               r.grad_omega_l2 * r.grad_omega_l2);
    r.int_lambda_half_theta_sq =
        trap(prev->int_lambda_half_theta_sq, prev->lambda_half_theta * prev->lambda_half_theta,
             r.lambda_half_theta * r.lambda_half_theta);
    r.int_lambda_k_half_theta_sq = trap(prev->int_lambda_k_half_theta_sq,
                                        prev->lambda_k_half_theta * prev->lambda_k_half_theta,
                                        r.lambda_k_half_theta * r.lambda_k_half_theta);
    r.int_lambda_3half_theta_sq =
        trap(prev->int_lambda_3half_theta_sq, prev->lambda_3half_theta * prev->lambda_3half_theta,
             r.lambda_3half_theta * r.lambda_3half_theta);
    r.int_u_inf = trap(prev->int_u_inf, prev->u_inf, r.u_inf);
    r.int_Omega_inf = trap(prev->int_Omega_inf, prev->linf_Omega, r.linf_Omega);
  }
  return r;
}

namespace {

const char* kColumns[] = {
    "t",
    "u_inf",
    "l2_u",
    "l2_omega",
    "l2_theta",
    "l4_theta",
    "l8_theta",
    "linf_theta",
    "hk_theta",
    "h1dot_theta",
    "hs_u",
    "hs_omega",
    "hs_theta",
    "lr_gamma",
    "lr_omega",
    "linf_Omega",
    "grad_omega_inf",
    "grad_omega_l2",
    "lambda_half_theta",
    "lambda_k_half_theta",
    "lambda_3half_theta",
    "int_grad_omega_sq",
    "int_lambda_half_theta_sq",
    "int_lambda_k_half_theta_sq",
    "int_lambda_3half_theta_sq",
    "int_u_inf",
    "int_Omega_inf",
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string diagnostics_csv_header(const DiagParams& dp) {
  std::string h = "# k=" + fmt(dp.k) + " r=" + fmt(dp.r) + " s=" + fmt(dp.hs) + "\n";
  bool first = true;
  for (const char* c : kColumns) {
    if (!first) h += ",";
    h += c;
    first = false;
  }
  h += "\n";
  return h;
}

std::string diagnostics_csv_row(const DiagnosticsRecord& r) {
  const double vals[] = {
      r.t,
      r.u_inf,
      r.l2_u,
      r.l2_omega,
      r.l2_theta,
      r.l4_theta,
      r.l8_theta,
      r.linf_theta,
      r.hk_theta,
      r.h1dot_theta,
      r.hs_u,
      r.hs_omega,
      r.hs_theta,
      r.lr_gamma,
      r.lr_omega,
      r.linf_Omega,
      r.grad_omega_inf,
      r.grad_omega_l2,
      r.lambda_half_theta,
      r.lambda_k_half_theta,
      r.lambda_3half_theta,
      r.int_grad_omega_sq,
      r.int_lambda_half_theta_sq,
      r.int_lambda_k_half_theta_sq,
      r.int_lambda_3half_theta_sq,
      r.int_u_inf,
      r.int_Omega_inf,
  };
  std::string row;
  bool first = true;
  for (double v : vals) {
    if (!first) row += ",";
    row += fmt(v);
    first = false;
  }
  row += "\n";
  return row;
}

BoundEntry theta_transport_bound(std::span<const DiagnosticsRecord> series) {
  if (series.empty()) throw std::invalid_argument("theta_transport_bound: empty series");
  BoundEntry e;
  e.name = "theta_transport";
  const double theta0 = series.front().linf_theta;
  for (const auto& r : series) {
    const double bound = theta0 + r.int_u_inf;
    const double margin = bound - r.linf_theta;
    e.margin.emplace_back(r.t, margin);
    const double scale = std::max(bound, 1e-300);
    if (margin < -1e-6 * scale) e.violation = true;
  }
  return e;
}

ExpFit exponential_bound_fit(std::span<const std::pair<double, double>> series) {
  if (series.size() < 2) throw std::invalid_argument("exponential_bound_fit: need >= 2 samples");
  ExpFit fit;
  const double q0 = series.front().second;
  const double t0 = series.front().first;
  if (!(q0 > 0.0)) {
    fit.degenerate = true;
    return fit;
  }
  double c = 0.0;
  for (const auto& [t, q] : series) {
    if (t <= t0) continue;
    c = std::max(c, std::log(std::max(q, 1e-300) / q0) / (t - t0));
  }
  fit.c = c;
  return fit;
}

std::vector<std::pair<double, double>> energy_composite_series(
    std::span<const DiagnosticsRecord> series) {
  std::vector<std::pair<double, double>> out;
  out.reserve(series.size());
  for (const auto& r : series) {
    const double e = r.l2_u * r.l2_u + r.l2_omega * r.l2_omega + r.l2_theta * r.l2_theta +
                     r.int_grad_omega_sq + r.int_lambda_half_theta_sq;
    out.emplace_back(r.t, e);
  }
  return out;
}

std::vector<std::pair<double, double>> quantity_series(std::span<const DiagnosticsRecord> series,
                                                       double DiagnosticsRecord::* member) {
  std::vector<std::pair<double, double>> out;
  out.reserve(series.size());
  for (const auto& r : series) out.emplace_back(r.t, r.*member);
  return out;
}

std::optional<double> spectral_tail_slope(const SpectralField& f) {
  const int n = f.grid.n;
  const int kmax = f.grid.dealias_limit();
  const int k_lo = kmax / 2;
  if (k_lo < 2) return std::nullopt;

  std::vector<double> shell(kmax + 1, 0.0);
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    const int k1 = f.grid.wavenumber(static_cast<int>(i) / n);
    const int k2 = f.grid.wavenumber(static_cast<int>(i) % n);
    const int kk = static_cast<int>(
        std::lround(std::sqrt(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2)));
    if (kk >= 1 && kk <= kmax) shell[kk] += std::norm(f.coeffs[i]);
  }
  double total = 0.0;
  for (double s : shell) total += s;
  if (total <= 0.0) return std::nullopt;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (int kk = k_lo; kk <= kmax; ++kk) {
    if (shell[kk] <= 1e-28 * total) continue;
    const double x = std::log(static_cast<double>(kk));
    const double y = std::log(shell[kk]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 3) return std::nullopt;  // tail numerically empty: nothing to fit
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

BlowupIndicators blowup_indicator(std::span<const DiagnosticsRecord> series,
                                  const State& final_state) {
  BlowupIndicators b;
  if (!series.empty()) {
    b.omega_inf_integral = series.back().int_Omega_inf;
    const double t_half = 0.5 * (series.front().t + series.back().t);
    double a_half = series.front().int_Omega_inf;
    for (const auto& r : series)
      if (r.t <= t_half) a_half = r.int_Omega_inf;
    const double span_t = series.back().t - t_half;
    if (span_t > 0.0) b.recent_growth_rate = (b.omega_inf_integral - a_half) / span_t;
  }
  b.theta_tail_slope = spectral_tail_slope(final_state.theta);
  b.omega_tail_slope = spectral_tail_slope(final_state.Omega);
  auto flat = [](const std::optional<double>& s) { return s.has_value() && *s > -2.0; };
  b.resolution_exhausted = flat(b.theta_tail_slope) || flat(b.omega_tail_slope);
  return b;
}

}  // namespace ccnv
