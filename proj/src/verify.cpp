#include "ccnv/verify.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ccnv/inequality.hpp"
#include "ccnv/lp.hpp"
#include "ccnv/ops.hpp"
#include "ccnv/random_fields.hpp"
#include "ccnv/run.hpp"

// The acceptance suite. Every threshold below is part of the project's
// contract; none is tuned at run time.
namespace ccnv {

namespace {

using nlohmann::json;

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

// Multi-scale state exercising every dyadic block.
State broadband_state(const GridSpec& g, std::uint64_t seed, double amp) {
  const double kmax = g.dealias_limit();
  State s(g);
  s.Omega = random_power_law_field(g, splitmix64(seed ^ 0xb1), 2.0, 1.0, kmax, amp);
  s.omega = random_power_law_field(g, splitmix64(seed ^ 0xb2), 2.0, 1.0, kmax, amp);
  s.theta = random_power_law_field(g, splitmix64(seed ^ 0xb3), 2.0, 1.0, kmax, amp);
  return s;
}

RunConfig base_run_config(int n, double t_end, const std::string& family, double amp,
                          std::uint64_t seed) {
  RunConfig c;
  c.grid.n = n;
  c.t_end = t_end;
  c.init_family = family;
  c.init_amplitude = amp;
  c.seed = seed;
  c.stepper.dt_max = 5e-3;
  c.output_every = 10;
  return c;
}

struct Checker {
  json details;
  bool ok = true;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      details["failures"].push_back(what);
    }
  }
};

using CheckFn = std::function<void(Checker&)>;

// ---------------------------------------------------------------------------
// trivial suite: fast closed-form identities
// ---------------------------------------------------------------------------

void check_transform_identities(Checker& c) {
  const GridSpec g = grid_of(16);
  RealField constf(g);
  for (auto& v : constf.values) v = 3.0;
  const SpectralField C = transform_forward(constf);
  c.require(std::abs(C.mode(0, 0) - Complex(3.0, 0.0)) < 1e-13, "constant mode");

  RealField sin1(g);
  for (int i1 = 0; i1 < g.n; ++i1)
    for (int i2 = 0; i2 < g.n; ++i2) sin1.at(i1, i2) = std::sin(i1 * g.spacing());
  const SpectralField S = transform_forward(sin1);
  c.require(std::abs(S.mode(1, 0) - Complex(0.0, -0.5)) < 1e-13, "sin mode -i/2");
  c.require(std::abs(S.mode(-1, 0) - Complex(0.0, 0.5)) < 1e-13, "sin mode +i/2");

  const RealField back = transform_inverse(S);
  double err = 0.0;
  for (std::size_t i = 0; i < back.values.size(); ++i)
    err = std::max(err, std::abs(back.values[i] - sin1.values[i]));
  c.require(err < 1e-12, "round trip");
  c.details["round_trip_error"] = err;
}

void check_multiplier_identities(Checker& c) {
  const GridSpec g = grid_of(32);
  const SpectralField cos2 = cosine_mode(g, 0, 2, 1.0);
  const SpectralField half = multiplier_lambda(cos2, 0.5);
  c.require(std::abs(half.mode(0, 2) - std::sqrt(2.0) * cos2.mode(0, 2)) < 1e-14,
            "sqrt2 gain at |k|=2");

  const SpectralField cos1 = cosine_mode(g, 1, 0, 1.0);
  const SpectralField r = riesz1(cos1);
  const SpectralField msin1 = cosine_mode(g, 1, 0, -1.0, -0.5 * std::numbers::pi);
  c.require(std::abs(r.mode(1, 0) - msin1.mode(1, 0)) < 1e-14, "riesz of cos");

  const VectorField u = biot_savart(cos1);
  const SpectralField sin1 = cosine_mode(g, 1, 0, 1.0, -0.5 * std::numbers::pi);
  c.require(std::abs(u.u2.mode(1, 0) - sin1.mode(1, 0)) < 1e-14, "biot-savart u2");
  c.require(std::abs(u.u1.mode(1, 0)) < 1e-15, "biot-savart u1 zero");

  const SpectralField h = heat_semigroup(sin1, 1.0);
  c.require(std::abs(h.mode(1, 0) - std::exp(-1.0) * sin1.mode(1, 0)) < 1e-15, "heat decay");
}

void check_partition_of_unity(Checker& c) {
  const GridSpec g = grid_of(64);
  const DyadicPartition P = DyadicPartition::make(g);
  double worst = 0.0;
  for (std::size_t i = 0; i < P.chi_mask.size(); ++i) {
    double s = P.chi_mask[i];
    for (int j = 0; j <= P.j_max; ++j) s += P.phi_masks[j][i];
    worst = std::max(worst, std::abs(s - 1.0));
  }
  c.require(worst < 1e-12, "partition sums to one");
  c.details["max_defect"] = worst;

  SpectralField f = random_power_law_field(g, 5, 1.0, 1.0, 21.0, 1.0);
  SpectralField sum(g);
  for (int j = -1; j <= P.j_max; ++j) sum += block(f, j, P);
  c.require(l2_norm(sum - f) < 1e-12 * std::max(l2_norm(f), 1e-30), "block reconstruction");
}

void check_besov_constants(Checker& c) {
  const GridSpec g = grid_of(64);
  const DyadicPartition P = DyadicPartition::make(g);
  SpectralField constant(g);
  constant.coeffs[0] = -2.0;
  const BesovIndex idx{1.2, 4.0, 2.0};
  const double expected = std::pow(2.0, -1.2) * 2.0 * std::pow(kTwoPi * kTwoPi, 0.25);
  const double got = besov_norm(constant, idx, P);
  c.require(std::abs(got - expected) < 1e-12 * expected, "constant besov value");
  c.details["value"] = got;
}

void check_solver_fixed_point(Checker& c) {
  const GridSpec g = grid_of(16);
  const StepResult r = step(State(g), Params{}, StepperConfig{}, 1e-3);
  c.require(!r.blew_up, "no spurious blow-up");
  double m = 0.0;
  for (const auto& v : r.state.theta.coeffs) m = std::max(m, std::abs(v));
  for (const auto& v : r.state.Omega.coeffs) m = std::max(m, std::abs(v));
  c.require(m == 0.0, "rest state is fixed");

  State s(g);
  s.Omega = cosine_mode(g, 1, 0, 1.0);
  const Tendency td = rhs(s, Params{});
  c.require(std::abs(td.domega.mode(1, 0) - Complex(0.5, 0.0)) < 1e-14, "micro-rotation source");
  c.require(std::abs(td.dtheta.mode(1, 0) - Complex(0.0, -0.5)) < 1e-14, "buoyancy source");
}

// ---------------------------------------------------------------------------
// gamma cancellation
// ---------------------------------------------------------------------------

void check_gamma_cancellation(Checker& c) {
  const GridSpec g = grid_of(64);
  const Params p;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const State s = broadband_state(g, 4000 + i, 1.0);
    worst = std::max(worst, gamma_residual(s, p));
  }
  c.details["max_residual_ensemble"] = worst;
  c.require(worst < 1e-8, "ensemble residual below 1e-8");

  RunConfig rc = base_run_config(64, 1.0, "random-bandlimited", 1.0, 11);
  State s = initial_state(rc);
  double worst_traj = gamma_residual(s, p);
  int steps = 0;
  while (s.t < rc.t_end - 1e-14) {
    const double dt = std::min(stable_dt(s, rc.stepper), rc.t_end - s.t);
    StepResult r = step(s, p, rc.stepper, dt);
    if (r.blew_up) {
      c.require(false, "trajectory blew up");
      return;
    }
    s = std::move(r.state);
    if (++steps % 10 == 0) worst_traj = std::max(worst_traj, gamma_residual(s, p));
  }
  c.details["max_residual_trajectory"] = worst_traj;
  c.require(worst_traj < 1e-8, "trajectory residual below 1e-8");
}

// ---------------------------------------------------------------------------
// energy balance along a run
// ---------------------------------------------------------------------------

void check_energy_balance(Checker& c) {
  RunConfig rc = base_run_config(64, 2.0, "random-bandlimited", 0.8, 21);
  const Params p = rc.params;
  State s = initial_state(rc);
  double worst = std::abs(energy_balance_residual(s, p));
  int steps = 0;
  while (s.t < rc.t_end - 1e-14) {
    const double dt = std::min(stable_dt(s, rc.stepper), rc.t_end - s.t);
    StepResult r = step(s, p, rc.stepper, dt);
    if (r.blew_up) {
      c.require(false, "trajectory blew up");
      return;
    }
    s = std::move(r.state);
    if (++steps % rc.output_every == 0 || s.t >= rc.t_end - 1e-14)
      worst = std::max(worst, std::abs(energy_balance_residual(s, p)));
  }
  c.details["max_residual"] = worst;
  c.require(worst < 1e-10, "balance residual below 1e-10 at every output");
}

// ---------------------------------------------------------------------------
// growth-constant stability and the transport bound
// ---------------------------------------------------------------------------

struct FamilyRuns {
  std::map<std::string, RunResult> runs;  // keyed family/variant
};

const FamilyRuns& family_runs() {
  static const FamilyRuns cached = [] {
    FamilyRuns fr;
    for (const std::string family : {"random-bandlimited", "taylor-green", "buoyant-blob"}) {
      RunConfig base = base_run_config(64, 1.0, family, 0.5, 31);
      fr.runs[family + "/base"] = run(base, false);
      RunConfig fine = base;
      fine.grid.n = 128;
      fr.runs[family + "/n128"] = run(fine, false);
      RunConfig halfdt = base;
      halfdt.stepper.dt_max = base.stepper.dt_max / 2.0;
      halfdt.stepper.cfl = base.stepper.cfl / 2.0;
      fr.runs[family + "/dt2"] = run(halfdt, false);
    }
    return fr;
  }();
  return cached;
}

bool stable_pair(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  if (std::abs(a - b) < 1e-6) return true;  // both rates effectively zero
  const double lo = std::min(a, b), hi = std::max(a, b);
  return lo > 0.0 && hi / lo < 2.0;
}

void check_energy_growth_stability(Checker& c) {
  for (const std::string family : {"random-bandlimited", "taylor-green", "buoyant-blob"}) {
    const auto& runs = family_runs().runs;
    auto fit = [&](const std::string& key) {
      const RunResult& r = runs.at(key);
      return exponential_bound_fit(energy_composite_series(r.records));
    };
    const ExpFit base = fit(family + "/base");
    const ExpFit fine = fit(family + "/n128");
    const ExpFit halfdt = fit(family + "/dt2");
    json jf;
    jf["c_base"] = base.c;
    jf["c_n128"] = fine.c;
    jf["c_dt_half"] = halfdt.c;
    c.details[family] = jf;
    c.require(!base.degenerate && std::isfinite(base.c), family + ": finite fit");
    c.require(stable_pair(base.c, fine.c), family + ": stable under n 64->128");
    c.require(stable_pair(base.c, halfdt.c), family + ": stable under dt halving");
  }
}

void check_theta_transport(Checker& c) {
  for (const std::string family : {"random-bandlimited", "taylor-green", "buoyant-blob"}) {
    for (const std::string variant : {"/base", "/n128", "/dt2"}) {
      const RunResult& r = family_runs().runs.at(family + variant);
      if (r.status == RunStatus::blowup) {
        c.require(false, family + variant + ": blew up");
        continue;
      }
      const BoundEntry e = theta_transport_bound(r.records);
      double worst = 0.0;
      for (const auto& [t, m] : e.margin) worst = std::min(worst, m);
      c.details[family + variant] = worst;
      c.require(!e.violation, family + variant + ": transport margin stayed above -1e-6*scale");
    }
  }
}

// ---------------------------------------------------------------------------
// positivity gap
// ---------------------------------------------------------------------------

void check_positivity_gap(Checker& c) {
  const GridSpec g = grid_of(64);
  double worst_rel = 0.0;   // most negative gap / scale over the ensemble
  double worst_p2 = 0.0;    // |gap| / scale at p = 2
  for (int i = 0; i < 100; ++i) {
    const SpectralField F =
        random_power_law_field(g, 5000 + i, (i % 2 == 0) ? 2.0 : 1.0, 1.0, 21.0, 1.0);
    const RealField f = transform_inverse(F);
    for (double s : {0.5, 1.0}) {
      for (int p : {4, 6}) {
        const double gap = positivity_gap(f, s, p);
        const double scale = std::pow(lp_norm(f, static_cast<double>(p)), p - 2) *
                                 lambda_l2_norm(F, 0.5 * s) * lambda_l2_norm(F, 0.5 * s) +
                             1e-300;
        worst_rel = std::min(worst_rel, gap / scale);
      }
      const double gap2 = positivity_gap(f, s, 2);
      const double scale2 = lambda_l2_norm(F, 0.5 * s) * lambda_l2_norm(F, 0.5 * s) + 1e-300;
      worst_p2 = std::max(worst_p2, std::abs(gap2) / scale2);
    }
  }
  c.details["min_gap_over_scale"] = worst_rel;
  c.details["max_p2_identity_defect"] = worst_p2;
  c.require(worst_rel >= -1e-10, "gap >= -1e-10 * scale over the ensemble");
  c.require(worst_p2 < 1e-11, "p=2 identity to 1e-11");
}

// ---------------------------------------------------------------------------
// bernstein ratios
// ---------------------------------------------------------------------------

void check_bernstein(Checker& c) {
  const GridSpec g = grid_of(128);
  const DyadicPartition P = DyadicPartition::make(g);

  for (int j : {1, 2, 3, 4}) {
    const SpectralField mode = cosine_mode(g, 1 << j, 0, 1.0);
    const InequalityReport r = bernstein_check(mode, j, 0.5, 2.0, 2.0, P);
    c.require(r.ratio == 1.0, "single-mode ratio exactly 1 at j=" + std::to_string(j));
  }

  // Aligned-phase annulus fields: the origin-peaked family probes the sharp
  // side of the sup-norm bound uniformly in j. Random-phase Gaussian fields
  // would drift like 2^{-j} sqrt(log) against it and measure the sample
  // statistics rather than the constant.
  double lo = 1e300, hi = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int j = 2 + i % (P.j_max - 1 - 2 + 1);  // j in {2, ..., j_max-1}
    const SpectralField ann =
        aligned_band_field(g, 6000 + i, 0.8 * (1 << j), 2.6 * (1 << j), 1.0);
    const InequalityReport r = bernstein_check(ann, j, 0.5, 2.0, kInf, P);
    if (r.degenerate) continue;
    lo = std::min(lo, r.ratio);
    hi = std::max(hi, r.ratio);
  }
  c.details["ensemble_ratio_min"] = lo;
  c.details["ensemble_ratio_max"] = hi;
  c.require(hi / lo < 10.0, "ensemble max/min ratio below 10");
}

// ---------------------------------------------------------------------------
// commutator bound stability under refinement
// ---------------------------------------------------------------------------

struct CommutatorMaxima {
  double lambda = 0.0;
  double riesz_lp = 0.0;
  double riesz_besov = 0.0;
  double block = 0.0;
  int degenerate = 0;
};

CommutatorMaxima commutator_maxima(int n, std::uint64_t seed) {
  const GridSpec g = grid_of(n);
  const DyadicPartition P = DyadicPartition::make(g);
  const double kmax = g.dealias_limit();
  CommutatorMaxima m;
  for (int i = 0; i < 100; ++i) {
    const double gamma_exp = (i % 2 == 0) ? 2.0 : 1.0;
    const SpectralField f =
        random_power_law_field(g, splitmix64(seed ^ (0x100 + i)), gamma_exp, 1.0, kmax, 1.0);
    const SpectralField h =
        random_power_law_field(g, splitmix64(seed ^ (0x200 + i)), gamma_exp, 1.0, kmax, 1.0);
    const InequalityReport lr =
        lambda_commutator_check(f, h, 1.0, 4.0 / 3.0, 4.0, 2.0, 4.0, 2.0);
    if (lr.degenerate)
      ++m.degenerate;
    else
      m.lambda = std::max(m.lambda, lr.ratio);

    const VectorField u = biot_savart(f);
    const RieszCommutatorReports rr = riesz_commutator_check(u, h, 2.0, P);
    if (rr.lp_part.degenerate)
      ++m.degenerate;
    else
      m.riesz_lp = std::max(m.riesz_lp, rr.lp_part.ratio);
    if (!rr.besov_part.degenerate) m.riesz_besov = std::max(m.riesz_besov, rr.besov_part.ratio);
  }
  for (int i = 0; i < 30; ++i) {
    const SpectralField f =
        random_power_law_field(g, splitmix64(seed ^ (0x300 + i)), 2.0, 1.0, kmax, 1.0);
    const SpectralField h =
        random_power_law_field(g, splitmix64(seed ^ (0x400 + i)), 2.0, 1.0, kmax, 1.0);
    const VectorField u = biot_savart(f);
    for (int q = 0; q <= P.j_max; ++q) {
      const InequalityReport br = block_commutator_check(u, h, q, 2.0, P);
      if (!br.degenerate) m.block = std::max(m.block, br.ratio);
    }
  }
  // Degenerate inputs by construction: flagged, never counted as failures.
  {
    VectorField zero{SpectralField(g), SpectralField(g)};
    const SpectralField h = random_power_law_field(g, splitmix64(seed ^ 0x999), 2.0, 1.0, kmax, 1.0);
    const RieszCommutatorReports rr = riesz_commutator_check(zero, h, 2.0, P);
    if (rr.lp_part.degenerate) ++m.degenerate;
  }
  return m;
}

void check_commutator_stability(Checker& c) {
  const CommutatorMaxima coarse = commutator_maxima(64, 7100);
  const CommutatorMaxima fine = commutator_maxima(128, 7100);
  json jc, jf;
  jc["lambda"] = coarse.lambda;
  jc["riesz_lp"] = coarse.riesz_lp;
  jc["riesz_besov"] = coarse.riesz_besov;
  jc["block"] = coarse.block;
  jf["lambda"] = fine.lambda;
  jf["riesz_lp"] = fine.riesz_lp;
  jf["riesz_besov"] = fine.riesz_besov;
  jf["block"] = fine.block;
  c.details["n64"] = jc;
  c.details["n128"] = jf;
  c.details["degenerate_flagged"] = coarse.degenerate + fine.degenerate;

  auto finite = [](double v) { return std::isfinite(v) && v > 0.0; };
  c.require(finite(coarse.lambda) && finite(fine.lambda), "lambda commutator ratios finite");
  c.require(finite(coarse.riesz_lp) && finite(fine.riesz_lp), "riesz commutator ratios finite");
  c.require(finite(coarse.block) && finite(fine.block), "block commutator ratios finite");
  c.require(coarse.degenerate + fine.degenerate > 0, "degenerate cases present and flagged");
  c.require(stable_pair(coarse.lambda, fine.lambda), "lambda ratio stable under doubling");
  c.require(stable_pair(coarse.riesz_lp, fine.riesz_lp), "riesz L^p ratio stable under doubling");
  c.require(stable_pair(coarse.riesz_besov, fine.riesz_besov),
            "riesz besov ratio stable under doubling");
  c.require(stable_pair(coarse.block, fine.block), "block ratio stable under doubling");
}

void check_log_sobolev_stability(Checker& c) {
  double worst64 = 0.0, worst128 = 0.0;
  for (int n : {64, 128}) {
    const GridSpec g = grid_of(n);
    const DyadicPartition P = DyadicPartition::make(g);
    double& worst = n == 64 ? worst64 : worst128;
    for (int i = 0; i < 60; ++i) {
      const SpectralField f =
          random_power_law_field(g, 7500 + i, 2.0, 1.0, g.dealias_limit(), 1.0);
      const InequalityReport r = log_sobolev_check(f, 3.0, P);
      if (!r.degenerate) worst = std::max(worst, r.ratio);
    }
  }
  c.details["max_ratio_n64"] = worst64;
  c.details["max_ratio_n128"] = worst128;
  c.require(stable_pair(worst64, worst128), "ratio stable under grid doubling");
}

// Advective commutator [Lambda, u.grad]theta exercised on simulated snapshots
// at the exponent set the H^1 temperature estimate uses (L^{4/3} against
// ||grad u||_4 ||Lambda theta||_2).
void check_advective_commutator_snapshots(Checker& c) {
  RunConfig rc = base_run_config(64, 0.5, "random-bandlimited", 0.8, 41);
  State s = initial_state(rc);
  double worst = 0.0;
  int steps = 0;
  while (s.t < rc.t_end - 1e-14) {
    const double dt = std::min(stable_dt(s, rc.stepper), rc.t_end - s.t);
    StepResult r = step(s, rc.params, rc.stepper, dt);
    if (r.blew_up) {
      c.require(false, "snapshot run blew up");
      return;
    }
    s = std::move(r.state);
    if (++steps % 20 != 0) continue;
    const VectorField u = biot_savart(s.Omega);
    // [Lambda, u.grad] theta through the advective form.
    SpectralField comm = multiplier_lambda(advect(u, s.theta), 1.0) -
                         advect(u, multiplier_lambda(s.theta, 1.0));
    hermitian_project(comm);
    const double lhs = lp_norm(comm, 4.0 / 3.0);
    const RealField du1 = gradient_magnitude(u.u1);
    const RealField du2 = gradient_magnitude(u.u2);
    RealField mag(u.u1.grid);
    for (std::size_t i = 0; i < mag.values.size(); ++i)
      mag.values[i] = std::hypot(du1.values[i], du2.values[i]);
    const double rhs = lp_norm(mag, 4.0) * lambda_l2_norm(s.theta, 1.0);
    if (rhs > 0.0) worst = std::max(worst, lhs / rhs);
  }
  c.details["max_ratio"] = worst;
  c.require(std::isfinite(worst) && worst > 0.0, "snapshot ratios finite");
}

// ---------------------------------------------------------------------------
// heat-kernel decay slopes
// ---------------------------------------------------------------------------

void check_heat_decay(Checker& c) {
  const GridSpec g = grid_of(128);
  const SpectralField f = flat_band_field(g, 81, 1.0, g.n / 3.0, 1.0);
  const HeatDecayReport sup = heat_decay_check(f, 1.0, kInf, kInf);
  const HeatDecayReport smoothing = heat_decay_check(f, 1.0, 2.0, kInf);
  c.details["slope_inf_inf"] = sup.slope;
  c.details["bound_inf_inf"] = sup.bound;
  c.details["slope_2_inf"] = smoothing.slope;
  c.details["bound_2_inf"] = smoothing.bound;
  c.require(sup.slope <= -0.4, "sup-norm decay slope <= -0.4");
  c.require(smoothing.slope <= -0.6, "smoothing decay slope <= -0.6");

  const SpectralField mode = cosine_mode(g, 1, 0, 1.0);
  const HeatDecayReport exact = heat_decay_check(mode, 1.0, 2.0, 2.0);
  c.require(exact.exact_mode && exact.max_rel_err < 1e-12, "single-mode exact decay");
}

// ---------------------------------------------------------------------------
// integrator accuracy
// ---------------------------------------------------------------------------

void check_integrator(Checker& c) {
  RunConfig rc = base_run_config(32, 0.25, "random-bandlimited", 0.5, 51);
  const ConvergenceReport rep = convergence(rc);
  c.details["orders"] = rep.orders;
  c.details["errors"] = rep.errors;
  c.require(!rep.orders.empty() && rep.orders[0] >= 1.8 && rep.orders[0] <= 2.2,
            "temporal order in [1.8, 2.2]");

  // Decoupled linear runs against the analytic exponentials.
  const GridSpec g = grid_of(32);
  Params lin;
  lin.linear_couplings = false;
  StepperConfig cfg;
  cfg.dt_max = 1e-3;
  State s(g);
  s.omega = cosine_mode(g, 2, 1, 1.0);
  s.theta = cosine_mode(g, 0, 3, 0.5);
  State cur = s;
  while (cur.t < 0.1 - 1e-14) {
    StepResult r = step(cur, lin, cfg, std::min(1e-3, 0.1 - cur.t));
    cur = std::move(r.state);
  }
  const double wrate = lin.nu * 5.0 + 4.0 * lin.chi;
  const double trate = std::pow(9.0, 0.5 * lin.beta);
  const double werr =
      std::abs(cur.omega.mode(2, 1) - std::exp(-wrate * 0.1) * s.omega.mode(2, 1)) /
      std::abs(s.omega.mode(2, 1));
  const double terr =
      std::abs(cur.theta.mode(0, 3) - std::exp(-trate * 0.1) * s.theta.mode(0, 3)) /
      std::abs(s.theta.mode(0, 3));
  c.details["omega_exp_err"] = werr;
  c.details["theta_exp_err"] = terr;
  c.require(werr < 1e-12, "micro-rotation matches analytic exponential to 1e-12");
  c.require(terr < 1e-12, "temperature matches analytic exponential to 1e-12");

  // beta = 2: the stepped temperature path equals the heat-semigroup operator.
  Params heatp;
  heatp.beta = 2.0;
  heatp.linear_couplings = false;
  State hs(g);
  hs.theta = random_power_law_field(g, 52, 2.0, 1.0, 8.0, 1.0);
  State hcur = hs;
  while (hcur.t < 0.1 - 1e-14) {
    StepResult r = step(hcur, heatp, cfg, std::min(1e-3, 0.1 - hcur.t));
    hcur = std::move(r.state);
  }
  const SpectralField expected = heat_semigroup(hs.theta, 0.1);
  const double herr = l2_norm(hcur.theta - expected) / std::max(l2_norm(expected), 1e-300);
  c.details["heat_path_err"] = herr;
  c.require(herr < 1e-12, "beta=2 path matches the heat semigroup to 1e-12");
}

// ---------------------------------------------------------------------------
// mean invariants and byte-identical reruns
// ---------------------------------------------------------------------------

void check_mean_invariants(Checker& c) {
  const GridSpec g = grid_of(64);
  State s = random_state(g, 61, 0.5);
  s.omega.coeffs[0] = 0.4;
  s.theta.coeffs[0] += 0.15;
  const double w0 = s.omega.mean().real();
  const double t0 = s.theta.mean().real();
  Params p;
  StepperConfig cfg;
  while (s.t < 1.0 - 1e-14) {
    StepResult r = step(s, p, cfg, std::min(stable_dt(s, cfg), 1.0 - s.t));
    if (r.blew_up) {
      c.require(false, "reference run blew up");
      return;
    }
    s = std::move(r.state);
  }
  const double theta_drift = std::abs(s.theta.mean().real() - t0);
  const double omega_err =
      std::abs(s.omega.mean().real() - w0 * std::exp(-4.0 * p.chi * s.t)) / std::abs(w0);
  c.details["theta_mean_drift"] = theta_drift;
  c.details["omega_mean_decay_err"] = omega_err;
  c.require(theta_drift < 1e-12, "temperature mean constant to 1e-12");
  c.require(omega_err < 1e-8, "micro-rotation mean decays as exp(-2t) to 1e-8");

  // Byte-identical rerun of the written diagnostics.
  namespace fs = std::filesystem;
  RunConfig rc = base_run_config(64, 1.0, "random-bandlimited", 0.5, 61);
  rc.out_dir = (fs::temp_directory_path() / "ccnv_verify_det_a").string();
  RunConfig rc2 = rc;
  rc2.out_dir = (fs::temp_directory_path() / "ccnv_verify_det_b").string();
  fs::remove_all(rc.out_dir);
  fs::remove_all(rc2.out_dir);
  (void)run(rc);
  (void)run(rc2);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const bool same = slurp(rc.out_dir + "/diagnostics.csv") == slurp(rc2.out_dir + "/diagnostics.csv");
  fs::remove_all(rc.out_dir);
  fs::remove_all(rc2.out_dir);
  c.require(same, "reruns are byte-identical");
}

// ---------------------------------------------------------------------------
// critical-dissipation desk run
// ---------------------------------------------------------------------------

void check_critical_desk_run(Checker& c) {
  // Amplitude chosen so the buoyancy instability (growth up to e^t) leaves the
  // trajectory resolved through T = 5; larger data steepens temperature
  // fronts past what a 128-point grid can carry.
  RunConfig rc = base_run_config(128, 5.0, "random-bandlimited", 0.02, 71);
  rc.stepper.dt_max = 1e-2;
  const RunResult r = run(rc, false);
  c.details["t_final"] = r.t_final;
  c.details["status"] = static_cast<int>(r.status);
  c.require(r.status != RunStatus::blowup, "no blow-up flag");
  c.require(r.t_final >= rc.t_end - 1e-9, "reached the time horizon");
  bool finite = true;
  for (const auto& rec : r.records) finite = finite && rec.all_finite();
  c.require(finite, "every monitored quantity finite");
  if (!r.records.empty()) {
    c.details["final_linf_vorticity"] = r.records.back().linf_Omega;
    c.details["final_hs_theta"] = r.records.back().hs_theta;
    c.details["int_lambda_3half_theta_sq"] = r.records.back().int_lambda_3half_theta_sq;
    c.details["int_Omega_inf"] = r.records.back().int_Omega_inf;
  }
  // The vorticity carries no dissipation, so its tail flattens once the
  // nonlinearity has acted; reported, not failed.
  if (r.indicators.theta_tail_slope) c.details["theta_tail_slope"] = *r.indicators.theta_tail_slope;
  if (r.indicators.omega_tail_slope)
    c.details["vorticity_tail_slope"] = *r.indicators.omega_tail_slope;
  c.details["resolution_exhausted"] = r.indicators.resolution_exhausted;
}

// ---------------------------------------------------------------------------

struct NamedCheck {
  const char* name;
  const char* suite;
  CheckFn fn;
};

const std::vector<NamedCheck>& check_table() {
  static const std::vector<NamedCheck> table = {
      {"transform-identities", "trivial", check_transform_identities},
      {"multiplier-identities", "trivial", check_multiplier_identities},
      {"partition-of-unity", "trivial", check_partition_of_unity},
      {"besov-constants", "trivial", check_besov_constants},
      {"solver-fixed-point", "trivial", check_solver_fixed_point},
      {"gamma-cancellation", "solver", check_gamma_cancellation},
      {"energy-balance", "solver", check_energy_balance},
      {"integrator-accuracy", "solver", check_integrator},
      {"mean-invariants-determinism", "solver", check_mean_invariants},
      {"energy-growth-stability", "bounds", check_energy_growth_stability},
      {"theta-transport", "bounds", check_theta_transport},
      {"positivity-gap", "lemmas", check_positivity_gap},
      {"bernstein-ratios", "lemmas", check_bernstein},
      {"commutator-stability", "lemmas", check_commutator_stability},
      {"log-sobolev-stability", "lemmas", check_log_sobolev_stability},
      {"advective-commutator-snapshots", "lemmas", check_advective_commutator_snapshots},
      {"heat-decay-slopes", "lemmas", check_heat_decay},
      {"critical-desk-run", "desk", check_critical_desk_run},
  };
  return table;
}

}  // namespace

std::vector<std::string> verify_selectors() {
  std::vector<std::string> out = {"all", "trivial", "lemmas", "solver", "bounds", "desk"};
  for (const auto& c : check_table()) out.push_back(c.name);
  return out;
}

std::vector<CheckResult> run_verify(const std::string& selector, std::ostream* progress) {
  std::vector<CheckResult> results;
  bool matched = false;
  for (const auto& check : check_table()) {
    if (selector != "all" && selector != check.suite && selector != check.name) continue;
    matched = true;
    CheckResult res;
    res.name = check.name;
    res.suite = check.suite;
    Checker ck;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      check.fn(ck);
      res.status = ck.ok ? "pass" : "fail";
    } catch (const std::exception& e) {
      res.status = "fail";
      ck.details["exception"] = e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.details = std::move(ck.details);
    if (progress)
      (*progress) << "[" << (res.status == "pass" ? "PASS" : "FAIL") << "] " << res.name << " ("
                  << res.suite << ", " << res.seconds << " s)" << std::endl;
    results.push_back(std::move(res));
  }
  if (!matched) throw std::invalid_argument("verify: unknown selector '" + selector + "'");
  return results;
}

void write_jsonl(const std::vector<CheckResult>& results, std::ostream& os) {
  for (const auto& r : results) {
    json j;
    j["name"] = r.name;
    j["suite"] = r.suite;
    j["status"] = r.status;
    j["seconds"] = r.seconds;
    j["details"] = r.details;
    os << j.dump() << "\n";
  }
}

}  // namespace ccnv
