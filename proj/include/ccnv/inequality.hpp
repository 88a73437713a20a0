#pragma once

#include <string>
#include <vector>

#include "ccnv/field.hpp"
#include "ccnv/lp.hpp"
#include "ccnv/solver.hpp"

// Numerical two-sided evaluation of the harmonic-analysis estimates the
// a priori bounds rest on: each check computes the left side, the right side
// without its unspecified constant, and reports the ratio. A vanishing right
// side with vanishing left side is flagged degenerate, never failed.
namespace ccnv {

struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs_without_constant = 0.0;
  double ratio = 0.0;
  bool degenerate = false;
  // Bernstein only: lhs / (2^{2 alpha j} * ||f||_q), the reverse-side ratio.
  double lower_ratio = 0.0;
};

struct EnsembleStats {
  double min = 0.0, median = 0.0, max = 0.0;
  int count = 0;
  int degenerate_count = 0;
};

EnsembleStats ensemble_stats(std::vector<InequalityReport> reports);

// ||Lambda^{2 alpha} f||_q vs 2^{2 alpha j + 2 j (1/p - 1/q)} ||f||_p for an
// annulus-supported f at dyadic level j (throws otherwise); 2 <= p <= q.
InequalityReport bernstein_check(const SpectralField& f, int j, double alpha, double p, double q,
                                 const DyadicPartition& P);

// Lambda^s(f g) - f Lambda^s g, dealiased.
SpectralField lambda_commutator(const SpectralField& f, const SpectralField& g, double s);

// || [Lambda^s, f] g ||_r vs ||grad f||_{p1} ||Lambda^{s-1} g||_{q1}
//                           + ||Lambda^s f||_{p2} ||g||_{q2};
// requires 1/r = 1/p1 + 1/q1 = 1/p2 + 1/q2.
InequalityReport lambda_commutator_check(const SpectralField& f, const SpectralField& g, double s,
                                         double r, double p1, double q1, double p2, double q2);

struct RieszCommutatorReports {
  InequalityReport lp_part;     // vs ||grad u||_p ||theta||_inf
  InequalityReport besov_part;  // B^0_{inf,1} vs (||W||_inf + ||W||_p)(||theta||_{B^{1/2}_{inf,1}} + ||theta||_p)
};

RieszCommutatorReports riesz_commutator_check(const VectorField& u, const SpectralField& theta,
                                              double p, const DyadicPartition& P);

// || [block_q, u.grad] theta ||_p vs ||grad u||_p ||theta||_{B^0_{inf,inf}}.
InequalityReport block_commutator_check(const VectorField& u, const SpectralField& theta,
                                        int q_block, double p, const DyadicPartition& P);

// int |f|^{p-2} f Lambda^s f dx - (2/p) ||Lambda^{s/2}(sgn(f)|f|^{p/2})||^2,
// evaluated on a 2x oversampled grid; identically zero at p = 2 and
// nonnegative (up to rounding) for the even p the estimates use.
double positivity_gap(const RealField& f, double s, int p);

// ||grad f||_inf vs ||grad f||_2 + ||grad f||_{B^0_{inf,inf}} log(e + ||Lambda^s f||_2),
// s > 2.
InequalityReport log_sobolev_check(const SpectralField& f, double s, const DyadicPartition& P);

struct HeatDecayReport {
  bool exact_mode = false;   // input lives on a single |k| shell
  double slope = 0.0;        // fitted d log norm / d log t over the window
  double bound = 0.0;        // -s/2 - (1/p - 1/q)
  double max_rel_err = 0.0;  // exact-mode path: deviation from the analytic decay
  std::vector<double> times;
  std::vector<double> norms;
};

// ||Lambda^s e^{t Lap} f||_q over a log-spaced window t in [4/n^2, 1/4],
// fitted against t; f must be mean-free.
HeatDecayReport heat_decay_check(const SpectralField& f, double s, double p, double q);

}  // namespace ccnv
