#include <doctest.h>

#include <cmath>

#include "ccnv/diagnostics.hpp"
#include "ccnv/kernels.hpp"
#include "ccnv/ops.hpp"
#include "ccnv/random_fields.hpp"
#include "oracle.hpp"

using namespace ccnv;

namespace {

GridSpec grid_of(int n) {
  GridSpec g;
  g.n = n;
  return g;
}

State random_state(const GridSpec& g, std::uint64_t seed, double amp) {
  State s(g);
  s.Omega = random_power_law_field(g, splitmix64(seed ^ 0xa1), 2.0, 1.0, 8.0, amp);
  s.omega = random_power_law_field(g, splitmix64(seed ^ 0xa2), 2.0, 1.0, 8.0, amp);
  s.theta = random_power_law_field(g, splitmix64(seed ^ 0xa3), 2.0, 1.0, 8.0, amp);
  return s;
}

std::vector<DiagnosticsRecord> trajectory_records(State s, const Params& p,
                                                  const StepperConfig& cfg, double t_end,
                                                  const DiagParams& dp, int every,
                                                  std::vector<State>* states = nullptr) {
  std::vector<DiagnosticsRecord> recs;
  recs.push_back(record(s, nullptr, dp));
  if (states) states->push_back(s);
  int i = 0;
  while (s.t < t_end - 1e-14) {
    const double dt = std::min(stable_dt(s, cfg), t_end - s.t);
    StepResult r = step(s, p, cfg, dt);
    REQUIRE(!r.blew_up);
    s = std::move(r.state);
    if (++i % every == 0 || s.t >= t_end - 1e-14) {
      recs.push_back(record(s, &recs.back(), dp));
      if (states) states->push_back(s);
    }
  }
  return recs;
}

}  // namespace

TEST_SUITE_BEGIN("diag");

TEST_CASE("record of the zero state vanishes and is pure") {
  const State s(grid_of(32));
  const DiagnosticsRecord r = record(s, nullptr, DiagParams{});
  CHECK(r.l2_u == 0.0);
  CHECK(r.l2_theta == 0.0);
  CHECK(r.linf_Omega == 0.0);
  CHECK(r.lr_gamma == 0.0);
  CHECK(r.int_u_inf == 0.0);
  CHECK(r.all_finite());

  const DiagnosticsRecord r2 = record(s, nullptr, DiagParams{});
  CHECK(diagnostics_csv_row(r) == diagnostics_csv_row(r2));
}

TEST_CASE("record of a single temperature mode matches the analytic norms") {
  const GridSpec g = grid_of(64);
  State s(g);
  s.theta = cosine_mode(g, 1, 0, 1.0, -0.5 * std::numbers::pi);  // sin x1
  const DiagnosticsRecord r = record(s, nullptr, DiagParams{});
  CHECK(r.l2_theta == doctest::Approx(std::sqrt(2.0) * std::numbers::pi).epsilon(1e-13));
  CHECK(r.linf_theta == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(r.h1dot_theta == doctest::Approx(std::sqrt(2.0) * std::numbers::pi).epsilon(1e-13));
  CHECK(r.hk_theta == doctest::Approx(std::sqrt(2.0) * std::numbers::pi).epsilon(1e-13));
  CHECK(r.l2_u == 0.0);
}

TEST_CASE("sobolev columns agree with the direct frequency-sum reference") {
  const GridSpec g = grid_of(64);
  const State s = random_state(g, 11, 1.0);
  DiagParams dp;
  const DiagnosticsRecord r = record(s, nullptr, dp);
  CHECK(r.hs_theta == doctest::Approx(oracle::sobolev_direct(s.theta, dp.hs)).epsilon(1e-10));
  CHECK(r.hs_omega == doctest::Approx(oracle::sobolev_direct(s.omega, dp.hs)).epsilon(1e-10));
}

TEST_CASE("accumulators match a one-pass recomputation over the stored series") {
  const GridSpec g = grid_of(32);
  StepperConfig cfg;
  cfg.dt_max = 5e-3;
  const auto recs = trajectory_records(random_state(g, 21, 0.5), Params{}, cfg, 0.3,
                                       DiagParams{}, 2);
  REQUIRE(recs.size() > 4);

  kern::Accum acc;
  for (std::size_t i = 1; i < recs.size(); ++i) {
    const double dt = recs[i].t - recs[i - 1].t;
    acc.add(0.5 * dt *
            (recs[i - 1].grad_omega_l2 * recs[i - 1].grad_omega_l2 +
             recs[i].grad_omega_l2 * recs[i].grad_omega_l2));
  }
  CHECK(recs.back().int_grad_omega_sq == doctest::Approx(acc.get()).epsilon(1e-12));

  for (std::size_t i = 1; i < recs.size(); ++i) {
    CHECK(recs[i].int_u_inf >= recs[i - 1].int_u_inf);
    CHECK(recs[i].int_grad_omega_sq >= recs[i - 1].int_grad_omega_sq);
  }
}

TEST_CASE("norm ordering and frequency interpolation hold at every output") {
  const GridSpec g = grid_of(32);
  StepperConfig cfg;
  cfg.dt_max = 5e-3;
  const auto recs = trajectory_records(random_state(g, 31, 0.7), Params{}, cfg, 0.3,
                                       DiagParams{}, 2);
  const double measure = kTwoPi * kTwoPi;
  for (const auto& r : recs) {
    // Hoelder on the torus: ||f||_2 <= |T|^{1/2 - 1/p} ||f||_p.
    CHECK(r.l2_theta <= std::pow(measure, 0.5 - 0.25) * r.l4_theta * (1.0 + 1e-12));
    CHECK(r.l2_theta <= std::pow(measure, 0.5 - 0.125) * r.l8_theta * (1.0 + 1e-12));
    // Cauchy-Schwarz in frequency.
    CHECK(r.lambda_half_theta * r.lambda_half_theta <=
          r.l2_theta * r.h1dot_theta * (1.0 + 1e-12));
  }
}

TEST_CASE("theta transport bound: dissipation-only run and zero trajectory") {
  const GridSpec g = grid_of(32);
  Params p;
  p.linear_couplings = false;  // u stays zero, theta only decays
  State s(g);
  s.theta = random_power_law_field(g, 41, 2.0, 1.0, 8.0, 1.0);
  StepperConfig cfg;
  cfg.dt_max = 5e-3;
  const auto recs = trajectory_records(std::move(s), p, cfg, 0.5, DiagParams{}, 2);
  const BoundEntry e = theta_transport_bound(recs);
  CHECK(!e.violation);
  for (const auto& [t, m] : e.margin) CHECK(m >= -1e-9);

  std::vector<DiagnosticsRecord> zeros(4);
  for (int i = 0; i < 4; ++i) zeros[i].t = 0.1 * i;
  const BoundEntry z = theta_transport_bound(zeros);
  CHECK(!z.violation);
  for (const auto& [t, m] : z.margin) CHECK(m == 0.0);
}

TEST_CASE("exponential bound fit: decay, synthetic growth, degenerate start") {
  std::vector<std::pair<double, double>> decay;
  for (int i = 0; i <= 16; ++i) decay.emplace_back(0.1 * i, std::exp(-0.7 * 0.1 * i));
  CHECK(exponential_bound_fit(decay).c == 0.0);

  std::vector<std::pair<double, double>> grow;
  for (int i = 0; i <= 16; ++i) grow.emplace_back(0.1 * i, 2.5 * std::exp(3.0 * 0.1 * i));
  CHECK(exponential_bound_fit(grow).c == doctest::Approx(3.0).epsilon(1e-9));

  std::vector<std::pair<double, double>> flat(17);
  for (int i = 0; i <= 16; ++i) flat[i] = {0.1 * i, 0.0};
  CHECK(exponential_bound_fit(flat).degenerate);
}

TEST_CASE("blow-up indicators: zero trajectory healthy, diffusion steepens the tail") {
  const GridSpec g = grid_of(64);
  std::vector<DiagnosticsRecord> zeros(3);
  for (int i = 0; i < 3; ++i) zeros[i].t = 0.1 * i;
  const BlowupIndicators z = blowup_indicator(zeros, State(g));
  CHECK(z.omega_inf_integral == 0.0);
  CHECK(!z.resolution_exhausted);
  CHECK(!z.theta_tail_slope.has_value());

  // Heat flow: each mode decays by e^{-|k|^2 t}, so the tail slope decreases.
  const SpectralField f = flat_band_field(g, 51, 1.0, 21.0, 1.0);
  const auto s1 = spectral_tail_slope(heat_semigroup(f, 0.005));
  const auto s2 = spectral_tail_slope(heat_semigroup(f, 0.02));
  REQUIRE(s1.has_value());
  REQUIRE(s2.has_value());
  CHECK(*s2 < *s1);
}

TEST_CASE("a deliberately under-resolved run raises the resolution flag") {
  const GridSpec g = grid_of(16);
  Params p;
  State s = random_state(g, 61, 4.0);
  StepperConfig cfg;
  cfg.dt_max = 2e-3;
  std::vector<State> states;
  const auto recs = trajectory_records(std::move(s), p, cfg, 0.4, DiagParams{}, 4, &states);
  const BlowupIndicators ind = blowup_indicator(recs, states.back());
  CHECK(ind.resolution_exhausted);
}

TEST_SUITE_END();
