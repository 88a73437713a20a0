#pragma once

#include <span>
#include <string_view>

#include "ccnv/field.hpp"

namespace ccnv {

// Governing system on the torus, in vorticity form with Omega = curl u:
//
//   dt Omega + u.grad Omega = -2*chi*Lap w + d1 theta  [- Lambda^{2a} Omega]
//   dt w     + u.grad w     = nu*Lap w - 4*chi*w + 2*chi*Omega
//   dt theta + u.grad theta = -Lambda^beta theta + u2
//   u = biot_savart(Omega)
//
// chi = 1/2, nu = 1, beta = 1 is the reference normalization; the 2*chi and
// 4*chi coefficients are always derived from chi at runtime. The optional
// Lambda^{2a} velocity dissipation (a = velocity_dissipation_alpha) is off at
// the default a = 0.
struct Params {
  double chi = 0.5;   // vortex viscosity
  double nu = 1.0;    // angular viscosity
  double beta = 1.0;  // temperature dissipation exponent; 1 is critical
  double velocity_dissipation_alpha = 0.0;

  // Switches off the linear cross couplings (the -2*chi*Lap w + d1 theta
  // source of Omega, the 2*chi*Omega source of w, the u2 source of theta) so
  // decoupled diffusion runs stay exactly diagonal. Experiment/test knob.
  bool linear_couplings = true;

  void validate() const;  // chi > 0, nu > 0, beta in [0, 2], alpha in [0, 2]
  bool operator==(const Params&) const = default;
};

struct State {
  double t = 0.0;
  SpectralField Omega;  // vorticity, mean-free
  SpectralField omega;  // micro-rotation
  SpectralField theta;  // temperature

  explicit State(const GridSpec& g) : Omega(g), omega(g), theta(g) {}
  State() = default;
  const GridSpec& grid() const { return Omega.grid; }
};

struct StepperConfig {
  double cfl = 0.4;
  double dt_max = 1e-2;
  static constexpr std::string_view scheme = "IF-RK2";

  void validate() const;  // cfl in (0, 1], dt_max > 0
  bool operator==(const StepperConfig&) const = default;
};

struct Tendency {
  SpectralField dOmega, domega, dtheta;
};

// Full instantaneous tendency (advection, couplings, dissipation), dealiased.
Tendency rhs(const State& s, const Params& p);

struct StepResult {
  State state;           // advanced state, or the last finite state on blow-up
  bool blew_up = false;
  double failure_time = 0.0;
};

// One IF-RK2 step: the diagonal linear multipliers are folded into exact
// exponential integrating factors, everything else is a two-stage explicit
// Runge-Kutta update. Throws on CFL violation; non-finite output is returned
// as a flagged result, not thrown.
StepResult step(const State& s, const Params& p, const StepperConfig& cfg, double dt);

double max_velocity(const State& s);                          // grid max |u|
double stable_dt(const State& s, const StepperConfig& cfg);   // cfl*h/max(|u|,eps), capped

// Omega + riesz1(theta) + omega.
SpectralField gamma(const State& s);

// [riesz1, u.grad] theta = riesz1(u.grad theta) - u.grad riesz1(theta),
// dealiased. Throws if u is not divergence-free.
SpectralField riesz_commutator(const VectorField& u, const SpectralField& theta);

// Relative L^2 mismatch between d/dt gamma assembled from the component
// tendencies and the closed-form evolution
//   -u.grad gamma - [riesz1, u.grad]theta + riesz1(u2) + 2*chi*Omega - 4*chi*w
//   + (nu - 2*chi) * Lap w,
// which verifies the engineered cancellation of the -2*chi*Lap w and d1 theta
// sources. Requires beta = 1 (the cancellation needs Lambda * riesz1 = d1).
double gamma_residual(const State& s, const Params& p);

// Relative defect of the instantaneous energy balance
//   d/dt (|u|^2 + |w|^2 + |theta|^2)/2 + nu*|grad w|^2 + 4*chi*|w|^2
//     + |Lambda^{beta/2} theta|^2 (+ |Lambda^a u|^2)
//   = 2*chi*<curl w, u> + <theta, u2> + 2*chi*<Omega, w> + <u2, theta>,
// with the time derivative evaluated through the tendencies.
double energy_balance_residual(const State& s, const Params& p);

// Reconstructs w(t_final) from the heat-kernel integral form
//   w = e^{nu t Lap} w0 + int_0^t e^{nu (t-tau) Lap} (2*chi*Omega - 4*chi*w
//       - u.grad w) dtau
// by trapezoidal quadrature over the stored snapshots and returns the
// relative L^2 deviation from the stepped w. Throws if consecutive snapshots
// are more than 1/32 time units apart.
double mild_omega_check(std::span<const State> trajectory, const Params& p);

}  // namespace ccnv
