#pragma once

#include <limits>
#include <span>

#include "ccnv/field.hpp"

// Spectral transforms and Fourier-multiplier operators on the periodic grid.
// All operations are pure: inputs are never mutated.
namespace ccnv {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Discrete Fourier coefficients, normalized so a constant field c maps to
// coeffs(0,0) = c.
SpectralField transform_forward(const RealField& f);

// Inverse transform. Throws std::invalid_argument if the coefficients are not
// Hermitian-symmetric (a real field cannot represent them).
RealField transform_inverse(const SpectralField& f);

// Unchecked inverse: takes the real part of the inverse DFT. For internal use
// on fields that carry the Hermitian invariant structurally.
RealField to_physical(const SpectralField& f);

bool is_hermitian(const SpectralField& f, double rel_tol = 1e-10);
void hermitian_project(SpectralField& f);

// Zero every mode with |k_i| > dealias_fraction * n/2.
void dealias(SpectralField& f);
SpectralField dealiased(SpectralField f);

// |k|^alpha multiplier (Zygmund operator to the power alpha). The mean mode
// maps to 0 for alpha != 0 and is kept for alpha == 0. alpha in [-2, 4].
SpectralField multiplier_lambda(const SpectralField& f, double alpha);

// i*k1/|k| multiplier; mean mode -> 0.
SpectralField riesz1(const SpectralField& f);

// i*k_axis multiplier; axis is 1 or 2.
SpectralField partial_derivative(const SpectralField& f, int axis);

// Divergence-free velocity with the given scalar curl, zero mean. The mean
// mode of the input is projected away.
VectorField biot_savart(const SpectralField& omega_curl);

// curl(u) = d1 u2 - d2 u1.
SpectralField curl(const VectorField& u);

double max_divergence(const VectorField& u);  // max |i k . u_hat|

// e^{-|k|^2 t} multiplier. Throws for t < 0.
SpectralField heat_semigroup(const SpectralField& f, double t);

// Dealiased spectral form of u . grad f, evaluated pseudo-spectrally.
// Throws on grid mismatch.
SpectralField advect(const VectorField& u, const SpectralField& f);

// Physical-velocity variant used by the time stepper to reuse transforms.
SpectralField advect_physical(const RealField& u1, const RealField& u2, const SpectralField& f);

// L^p norm of grid samples: (sum |v|^p h^2)^{1/p} for finite p >= 1, grid max
// of |v| for p = inf.
double lp_norm(const RealField& f, double p);
double lp_norm(const SpectralField& f, double p);  // transforms, then measures

// Spectral (Parseval) norms; exact for band-limited data.
double l2_norm(const SpectralField& f);                       // 2*pi*sqrt(sum |c|^2)
double sobolev_norm(const SpectralField& f, double s);        // H^s: weight (1+|k|^2)^s
double lambda_l2_norm(const SpectralField& f, double s);      // ||Lambda^s f||_{L^2}
double inner_l2(const SpectralField& a, const SpectralField& b);

double max_abs(const RealField& f);
bool all_finite(const SpectralField& f);

// Zero-pad embedding onto the 2x grid (trigonometric interpolation).
SpectralField oversample2(const SpectralField& f);

// Pointwise |grad f| magnitude on the grid.
RealField gradient_magnitude(const SpectralField& f);

// L^p norm of the pointwise magnitude sqrt(a^2+b^2) of a two-component field.
double lp_norm_magnitude(const RealField& a, const RealField& b, double p);

}  // namespace ccnv
