#include "ccnv/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "ccnv/kernels.hpp"
#include "ccnv/lp.hpp"
#include "ccnv/ops.hpp"

namespace ccnv {

namespace {
constexpr double kVelocityFloor = 1e-8;
}

void Params::validate() const {
  if (!(chi > 0.0)) throw std::invalid_argument("params.chi: must be > 0");
  if (!(nu > 0.0)) throw std::invalid_argument("params.nu: must be > 0");
  if (!(beta >= 0.0 && beta <= 2.0)) throw std::invalid_argument("params.beta: must lie in [0, 2]");
  if (!(velocity_dissipation_alpha >= 0.0 && velocity_dissipation_alpha <= 2.0))
    throw std::invalid_argument("params.alpha: must lie in [0, 2]");
}

void StepperConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("time.cfl: must lie in (0, 1]");
  if (!(dt_max > 0.0)) throw std::invalid_argument("time.dt_max: must be > 0");
}

namespace {

struct PhysicalVelocity {
  RealField u1, u2;
  SpectralField u2_hat;  // kept for the theta source
};

PhysicalVelocity velocity_of(const State& s) {
  VectorField u = biot_savart(s.Omega);
  PhysicalVelocity v{to_physical(u.u1), to_physical(u.u2), std::move(u.u2)};
  return v;
}

// Non-diagonal part of the tendency: advection plus (optionally) the linear
// cross couplings. The diagonal dissipation multipliers stay out so the
// stepper can integrate them exactly.
Tendency explicit_tendency(const State& s, const Params& p, const PhysicalVelocity& v) {
  const GridSpec& g = s.grid();
  const int n = g.n;
  Tendency td{SpectralField(g), SpectralField(g), SpectralField(g)};

  const SpectralField advO = advect_physical(v.u1, v.u2, s.Omega);
  const SpectralField advw = advect_physical(v.u1, v.u2, s.omega);
  const SpectralField advt = advect_physical(v.u1, v.u2, s.theta);

  const double two_chi = 2.0 * p.chi;
  const bool couple = p.linear_couplings;
  kern::map_elements(td.dOmega.coeffs.size(), [&](std::size_t i) {
    td.dOmega.coeffs[i] = -advO.coeffs[i];
    td.domega.coeffs[i] = -advw.coeffs[i];
    td.dtheta.coeffs[i] = -advt.coeffs[i];
    if (couple) {
      const int k1 = g.wavenumber(static_cast<int>(i) / n);
      const int k2 = g.wavenumber(static_cast<int>(i) % n);
      const double k2sum = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
      // -2*chi*Lap w contributes +2*chi*|k|^2 w_hat; buoyancy is i*k1*theta_hat.
      td.dOmega.coeffs[i] += two_chi * k2sum * s.omega.coeffs[i] +
                             Complex(0.0, k1) * s.theta.coeffs[i];
      td.domega.coeffs[i] += two_chi * s.Omega.coeffs[i];
      td.dtheta.coeffs[i] += v.u2_hat.coeffs[i];
    }
  });
  return td;
}

struct DiagonalMultipliers {
  std::vector<double> Omega, omega, theta;  // decay rates per mode
};

DiagonalMultipliers diagonal_rates(const GridSpec& g, const Params& p) {
  const int n = g.n;
  DiagonalMultipliers d;
  d.Omega.resize(g.size());
  d.omega.resize(g.size());
  d.theta.resize(g.size());
  const double four_chi = 4.0 * p.chi;
  const double a = p.velocity_dissipation_alpha;
  kern::map_elements(d.Omega.size(), [&](std::size_t i) {
    const int k1 = g.wavenumber(static_cast<int>(i) / n);
    const int k2 = g.wavenumber(static_cast<int>(i) % n);
    const double k2sum = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
    d.Omega[i] = (a > 0.0 && k2sum > 0.0) ? std::pow(k2sum, a) : 0.0;
    d.omega[i] = p.nu * k2sum + four_chi;
    d.theta[i] = k2sum == 0.0 ? 0.0 : std::pow(k2sum, 0.5 * p.beta);
  });
  return d;
}

}  // namespace

Tendency rhs(const State& s, const Params& p) {
  p.validate();
  const PhysicalVelocity v = velocity_of(s);
  Tendency td = explicit_tendency(s, p, v);
  const DiagonalMultipliers d = diagonal_rates(s.grid(), p);
  kern::map_elements(td.dOmega.coeffs.size(), [&](std::size_t i) {
    td.dOmega.coeffs[i] -= d.Omega[i] * s.Omega.coeffs[i];
    td.domega.coeffs[i] -= d.omega[i] * s.omega.coeffs[i];
    td.dtheta.coeffs[i] -= d.theta[i] * s.theta.coeffs[i];
  });
  dealias(td.dOmega);
  dealias(td.domega);
  dealias(td.dtheta);
  return td;
}

double max_velocity(const State& s) {
  const PhysicalVelocity v = velocity_of(s);
  return kern::reduce_max(v.u1.values.size(), [&](std::size_t i) {
    return std::hypot(v.u1.values[i], v.u2.values[i]);
  });
}

double stable_dt(const State& s, const StepperConfig& cfg) {
  const double umax = std::max(max_velocity(s), kVelocityFloor);
  return std::min(cfg.dt_max, cfg.cfl * s.grid().spacing() / umax);
}

StepResult step(const State& s, const Params& p, const StepperConfig& cfg, double dt) {
  p.validate();
  cfg.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
  if (dt > cfg.dt_max * (1.0 + 1e-12)) throw std::runtime_error("step: dt exceeds dt_max");

  const PhysicalVelocity v0 = velocity_of(s);
  const double umax = std::max(kern::reduce_max(v0.u1.values.size(),
                                                [&](std::size_t i) {
                                                  return std::hypot(v0.u1.values[i],
                                                                    v0.u2.values[i]);
                                                }),
                               kVelocityFloor);
  if (dt > cfg.cfl * s.grid().spacing() / umax * (1.0 + 1e-12))
    throw std::runtime_error("step: CFL violation");

  const GridSpec& g = s.grid();
  const DiagonalMultipliers rates = diagonal_rates(g, p);
  std::vector<double> eO(g.size()), ew(g.size()), et(g.size());
  kern::map_elements(eO.size(), [&](std::size_t i) {
    eO[i] = std::exp(-rates.Omega[i] * dt);
    ew[i] = std::exp(-rates.omega[i] * dt);
    et[i] = std::exp(-rates.theta[i] * dt);
  });

  const Tendency n0 = explicit_tendency(s, p, v0);

  State pred(g);
  pred.t = s.t + dt;
  kern::map_elements(pred.Omega.coeffs.size(), [&](std::size_t i) {
    pred.Omega.coeffs[i] = eO[i] * (s.Omega.coeffs[i] + dt * n0.dOmega.coeffs[i]);
    pred.omega.coeffs[i] = ew[i] * (s.omega.coeffs[i] + dt * n0.domega.coeffs[i]);
    pred.theta.coeffs[i] = et[i] * (s.theta.coeffs[i] + dt * n0.dtheta.coeffs[i]);
  });

  const PhysicalVelocity v1 = velocity_of(pred);
  const Tendency n1 = explicit_tendency(pred, p, v1);

  State out(g);
  out.t = s.t + dt;
  kern::map_elements(out.Omega.coeffs.size(), [&](std::size_t i) {
    out.Omega.coeffs[i] = eO[i] * s.Omega.coeffs[i] +
                          0.5 * dt * (eO[i] * n0.dOmega.coeffs[i] + n1.dOmega.coeffs[i]);
    out.omega.coeffs[i] = ew[i] * s.omega.coeffs[i] +
                          0.5 * dt * (ew[i] * n0.domega.coeffs[i] + n1.domega.coeffs[i]);
    out.theta.coeffs[i] = et[i] * s.theta.coeffs[i] +
                          0.5 * dt * (et[i] * n0.dtheta.coeffs[i] + n1.dtheta.coeffs[i]);
  });

  dealias(out.Omega);
  dealias(out.omega);
  dealias(out.theta);
  hermitian_project(out.Omega);
  hermitian_project(out.omega);
  hermitian_project(out.theta);
  out.Omega.coeffs[0] = 0.0;  // curl of a periodic field is mean-free

  if (!all_finite(out.Omega) || !all_finite(out.omega) || !all_finite(out.theta))
    return {s, true, s.t + dt};
  return {std::move(out), false, 0.0};
}

SpectralField gamma(const State& s) { return s.Omega + riesz1(s.theta) + s.omega; }

SpectralField riesz_commutator(const VectorField& u, const SpectralField& theta) {
  double cmax = 0.0;
  for (const auto& c : u.u1.coeffs) cmax = std::max(cmax, std::abs(c));
  for (const auto& c : u.u2.coeffs) cmax = std::max(cmax, std::abs(c));
  if (max_divergence(u) > 1e-12 * std::max(cmax, 1e-300))
    throw std::invalid_argument("riesz_commutator: u is not divergence-free");
  SpectralField comm = riesz1(advect(u, theta)) - advect(u, riesz1(theta));
  hermitian_project(comm);  // the cancellation can leave rounding-level skew
  return comm;
}

double gamma_residual(const State& s, const Params& p) {
  p.validate();
  if (std::abs(p.beta - 1.0) > 1e-12)
    throw std::invalid_argument("gamma_residual: requires beta = 1");

  const Tendency td = rhs(s, p);
  const SpectralField assembled = td.dOmega + riesz1(td.dtheta) + td.domega;

  const VectorField u = biot_savart(s.Omega);
  const SpectralField gam = gamma(s);
  SpectralField closed = -1.0 * advect(u, gam) - riesz_commutator(u, s.theta) + riesz1(u.u2);
  const GridSpec& g = s.grid();
  const int n = g.n;
  const double two_chi = 2.0 * p.chi;
  const double four_chi = 4.0 * p.chi;
  const double excess_nu = p.nu - two_chi;  // vanishes at the reference normalization
  kern::map_elements(closed.coeffs.size(), [&](std::size_t i) {
    closed.coeffs[i] += two_chi * s.Omega.coeffs[i] - four_chi * s.omega.coeffs[i];
    if (excess_nu != 0.0) {
      const int k1 = g.wavenumber(static_cast<int>(i) / n);
      const int k2 = g.wavenumber(static_cast<int>(i) % n);
      const double k2sum = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
      closed.coeffs[i] -= excess_nu * k2sum * s.omega.coeffs[i];
    }
    if (p.velocity_dissipation_alpha > 0.0) {
      const int k1 = g.wavenumber(static_cast<int>(i) / n);
      const int k2 = g.wavenumber(static_cast<int>(i) % n);
      const double k2sum = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
      if (k2sum > 0.0)
        closed.coeffs[i] -= std::pow(k2sum, p.velocity_dissipation_alpha) * s.Omega.coeffs[i];
    }
  });
  dealias(closed);

  const double scale = std::max(l2_norm(assembled), 1e-300);
  return l2_norm(assembled - closed) / scale;
}

double energy_balance_residual(const State& s, const Params& p) {
  p.validate();
  const Tendency td = rhs(s, p);
  const GridSpec& g = s.grid();
  const int n = g.n;

  // <u, du/dt> through the stream-function weight 1/|k|^2.
  const double ddt_u = kTwoPi * kTwoPi *
                       kern::reduce_sum(s.Omega.coeffs.size(), [&](std::size_t i) {
                         const int k1 = g.wavenumber(static_cast<int>(i) / n);
                         const int k2 = g.wavenumber(static_cast<int>(i) % n);
                         const double k2sum =
                             static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
                         if (k2sum == 0.0) return 0.0;
                         const Complex a = s.Omega.coeffs[i];
                         const Complex b = td.dOmega.coeffs[i];
                         return (a.real() * b.real() + a.imag() * b.imag()) / k2sum;
                       });
  const double ddt_w = inner_l2(s.omega, td.domega);
  const double ddt_t = inner_l2(s.theta, td.dtheta);

  const double grad_w = lambda_l2_norm(s.omega, 1.0);
  const double w_l2 = l2_norm(s.omega);
  const double theta_half = lambda_l2_norm(s.theta, 0.5 * p.beta);
  double diss_u = 0.0;
  if (p.velocity_dissipation_alpha > 0.0) {
    diss_u = kTwoPi * kTwoPi *
             kern::reduce_sum(s.Omega.coeffs.size(), [&](std::size_t i) {
               const int k1 = g.wavenumber(static_cast<int>(i) / n);
               const int k2 = g.wavenumber(static_cast<int>(i) % n);
               const double k2sum = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
               if (k2sum == 0.0) return 0.0;
               const double a2 = std::norm(s.Omega.coeffs[i]);
               return std::pow(k2sum, p.velocity_dissipation_alpha) * a2 / k2sum;
             });
  }

  const double lhs = ddt_u + ddt_w + ddt_t + p.nu * grad_w * grad_w +
                     4.0 * p.chi * w_l2 * w_l2 + theta_half * theta_half + diss_u;

  const VectorField u = biot_savart(s.Omega);
  // <curl w, u> with the scalar-to-vector curl (d2 w, -d1 w).
  const double curl_w_dot_u =
      inner_l2(partial_derivative(s.omega, 2), u.u1) -
      inner_l2(partial_derivative(s.omega, 1), u.u2);
  const double omega_dot_Omega = inner_l2(s.Omega, s.omega);
  const double buoyancy = inner_l2(s.theta, u.u2);

  const double two_chi = 2.0 * p.chi;
  const double rhs_val = two_chi * curl_w_dot_u + two_chi * omega_dot_Omega + 2.0 * buoyancy;

  const double scale = std::max({std::abs(ddt_u), std::abs(ddt_w), std::abs(ddt_t),
                                 p.nu * grad_w * grad_w, 4.0 * p.chi * w_l2 * w_l2,
                                 theta_half * theta_half, std::abs(rhs_val), 1e-300});
  return (lhs - rhs_val) / scale;
}

double mild_omega_check(std::span<const State> trajectory, const Params& p) {
  p.validate();
  if (trajectory.size() < 2) throw std::invalid_argument("mild_omega_check: need >= 2 snapshots");
  const double max_gap = 1.0 / 32.0;
  for (std::size_t i = 1; i < trajectory.size(); ++i)
    if (trajectory[i].t - trajectory[i - 1].t > max_gap * (1.0 + 1e-9))
      throw std::invalid_argument("mild_omega_check: snapshots sparser than 32 per unit time");

  const State& first = trajectory.front();
  const State& last = trajectory.back();
  const double t_final = last.t;
  const double two_chi = 2.0 * p.chi;
  const double four_chi = 4.0 * p.chi;

  std::vector<double> times(trajectory.size());
  for (std::size_t i = 0; i < trajectory.size(); ++i) times[i] = trajectory[i].t;
  const std::vector<double> w = trapezoid_weights(times);

  // e^{nu t Lap} w0 plus the quadrature of the propagated source.
  SpectralField mild = heat_semigroup(first.omega, p.nu * (t_final - first.t));
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const State& snap = trajectory[i];
    const PhysicalVelocity v = velocity_of(snap);
    SpectralField source = -1.0 * advect_physical(v.u1, v.u2, snap.omega);
    kern::map_elements(source.coeffs.size(), [&](std::size_t m) {
      source.coeffs[m] += two_chi * snap.Omega.coeffs[m] - four_chi * snap.omega.coeffs[m];
    });
    mild += w[i] * heat_semigroup(source, p.nu * (t_final - snap.t));
  }

  const double scale = std::max(l2_norm(last.omega), 1e-300);
  return l2_norm(mild - last.omega) / scale;
}

}  // namespace ccnv
