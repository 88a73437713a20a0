#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ccnv/solver.hpp"

namespace ccnv {

// Exponents for the non-integer-regularity monitors: Lambda^k theta in L^2
// together with the L^r norms of gamma and of the micro-rotation, restricted
// to 1/2 < k <= (r-2)/r and 4 < r < inf; hs is the Sobolev regularity
// reported for the full state (meaningful above 2).
struct DiagParams {
  double k = 0.6;
  double r = 8.0;
  double hs = 2.5;

  void validate() const;
  bool operator==(const DiagParams&) const = default;
};

// One time-stamped row of every monitored quantity. Accumulators advance by
// the trapezoid rule from the previous record.
struct DiagnosticsRecord {
  double t = 0.0;

  double l2_u = 0.0, l2_omega = 0.0, l2_theta = 0.0;
  double l4_theta = 0.0, l8_theta = 0.0, linf_theta = 0.0;
  double hk_theta = 0.0;       // ||Lambda^k theta||_2
  double h1dot_theta = 0.0;    // ||Lambda theta||_2
  double hs_u = 0.0, hs_omega = 0.0, hs_theta = 0.0;
  double lr_gamma = 0.0, lr_omega = 0.0;
  double linf_Omega = 0.0;
  double grad_omega_inf = 0.0;

  // Instantaneous integrands of the accumulators below.
  double grad_omega_l2 = 0.0;          // ||grad w||_2
  double lambda_half_theta = 0.0;      // ||Lambda^{1/2} theta||_2
  double lambda_k_half_theta = 0.0;    // ||Lambda^{k+1/2} theta||_2
  double lambda_3half_theta = 0.0;     // ||Lambda^{3/2} theta||_2
  double u_inf = 0.0;                  // ||u||_inf

  double int_grad_omega_sq = 0.0;
  double int_lambda_half_theta_sq = 0.0;
  double int_lambda_k_half_theta_sq = 0.0;
  double int_lambda_3half_theta_sq = 0.0;
  double int_u_inf = 0.0;
  double int_Omega_inf = 0.0;

  bool all_finite() const;
};

DiagnosticsRecord record(const State& s, const DiagnosticsRecord* prev, const DiagParams& dp);

std::string diagnostics_csv_header(const DiagParams& dp);
std::string diagnostics_csv_row(const DiagnosticsRecord& r);

struct BoundEntry {
  std::string name;
  double fitted_constant = 0.0;
  std::vector<std::pair<double, double>> margin;  // (t, margin)
  bool violation = false;
  bool degenerate = false;
};

// ||theta(t)||_inf <= ||theta0||_inf + int_0^t ||u||_inf dtau, margin form;
// violation when margin < -1e-6 * scale at any step.
BoundEntry theta_transport_bound(std::span<const DiagnosticsRecord> series);

struct ExpFit {
  double c = 0.0;
  bool degenerate = false;
};

// Smallest c >= 0 with Q(t) <= Q(0) e^{c t} over the series (exact maximum of
// log(Q/Q0)/t); degenerate when Q(0) vanishes.
ExpFit exponential_bound_fit(std::span<const std::pair<double, double>> series);

// Energy plus dissipation integrals, the quantity the exponential L^2 bound
// controls.
std::vector<std::pair<double, double>> energy_composite_series(
    std::span<const DiagnosticsRecord> series);
std::vector<std::pair<double, double>> quantity_series(
    std::span<const DiagnosticsRecord> series, double DiagnosticsRecord::* member);

// Least-squares slope of log shell energy vs log |k| over the top octave of
// resolved shells; nullopt when the tail carries no usable energy.
std::optional<double> spectral_tail_slope(const SpectralField& f);

struct BlowupIndicators {
  double omega_inf_integral = 0.0;  // int ||Omega||_inf at the final time
  double recent_growth_rate = 0.0;  // average growth over the trailing half
  std::optional<double> theta_tail_slope;
  std::optional<double> omega_tail_slope;  // vorticity tail
  bool resolution_exhausted = false;       // any tail slope > -2
};

BlowupIndicators blowup_indicator(std::span<const DiagnosticsRecord> series,
                                  const State& final_state);

}  // namespace ccnv
