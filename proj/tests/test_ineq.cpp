#include <doctest.h>

#include <cmath>

#include "ccnv/inequality.hpp"
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

double rel_diff(const SpectralField& a, const SpectralField& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    num = std::max(num, std::abs(a.coeffs[i] - b.coeffs[i]));
    den = std::max(den, std::abs(b.coeffs[i]));
  }
  return num / std::max(den, 1e-300);
}

SpectralField constant_field(const GridSpec& g, double c) {
  SpectralField f(g);
  f.coeffs[0] = c;
  return f;
}

}  // namespace

TEST_SUITE_BEGIN("ineq");

TEST_CASE("bernstein: sharp single mode, identity case, support rejection") {
  const GridSpec g = grid_of(64);
  const DyadicPartition P = DyadicPartition::make(g);

  const int j = 3;
  const SpectralField mode = cosine_mode(g, 1 << j, 0, 1.0);
  const InequalityReport sharp = bernstein_check(mode, j, 0.5, 2.0, 2.0, P);
  CHECK(sharp.ratio == 1.0);  // |k| = 2^j exactly saturates both sides
  CHECK(sharp.lower_ratio == 1.0);

  const SpectralField ann =
      random_power_law_field(g, 3, 1.0, 0.8 * (1 << j), 2.5 * (1 << j), 1.0);
  const InequalityReport ident = bernstein_check(ann, j, 0.0, 4.0, 4.0, P);
  CHECK(ident.ratio == doctest::Approx(1.0).epsilon(1e-13));

  const SpectralField low = cosine_mode(g, 1, 0, 1.0);
  CHECK_THROWS_AS((void)bernstein_check(low, 4, 0.5, 2.0, 2.0, P), std::invalid_argument);
  CHECK_THROWS_AS((void)bernstein_check(mode, j, 0.5, 4.0, 2.0, P), std::invalid_argument);
}

TEST_CASE("lambda commutator: constants, analytic reduction, brute-force oracle") {
  const GridSpec g = grid_of(32);
  const SpectralField f = random_power_law_field(g, 11, 2.0, 1.0, 6.0, 1.0);

  for (const auto& v : lambda_commutator(constant_field(g, 2.5), f, 1.0).coeffs)
    CHECK(std::abs(v) < 1e-13);

  // g constant: [Lambda^s, f] c = -c Lambda^s f + Lambda^s(c f) ... both terms
  // collapse to c Lambda^s f since Lambda^s kills the constant.
  const double c = -1.7;
  const SpectralField red = lambda_commutator(f, constant_field(g, c), 1.0);
  CHECK(rel_diff(red, c * multiplier_lambda(f, 1.0)) < 1e-12);

  // n = 8 with |k| <= 1 content: products stay inside the dealias cutoff, so
  // the direct O(n^4) evaluation is exact.
  const GridSpec g8 = grid_of(8);
  const SpectralField a = random_power_law_field(g8, 21, 0.0, 1.0, 1.5, 1.0);
  const SpectralField b = random_power_law_field(g8, 22, 0.0, 1.0, 1.5, 1.0);
  const double s = 0.75;
  const SpectralField got = lambda_commutator(a, b, s);

  SpectralField prod = oracle::product_direct(a, b);
  SpectralField lam_prod(g8);
  for (int m1 = 0; m1 < 8; ++m1)
    for (int m2 = 0; m2 < 8; ++m2) {
      const int k1 = g8.wavenumber(m1), k2 = g8.wavenumber(m2);
      const double kk = std::sqrt(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
      lam_prod.mode(k1, k2) = (kk == 0.0 ? 0.0 : std::pow(kk, s)) * prod.mode(k1, k2);
    }
  SpectralField lam_b(g8);
  for (int m1 = 0; m1 < 8; ++m1)
    for (int m2 = 0; m2 < 8; ++m2) {
      const int k1 = g8.wavenumber(m1), k2 = g8.wavenumber(m2);
      const double kk = std::sqrt(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
      lam_b.mode(k1, k2) = (kk == 0.0 ? 0.0 : std::pow(kk, s)) * b.mode(k1, k2);
    }
  const SpectralField expected = lam_prod - oracle::product_direct(a, lam_b);
  CHECK(rel_diff(got, expected) < 1e-10);
}

TEST_CASE("lambda commutator satisfies its defining identity") {
  const GridSpec g = grid_of(32);
  const SpectralField f = random_power_law_field(g, 25, 1.0, 1.0, 6.0, 1.0);
  const SpectralField h = random_power_law_field(g, 26, 1.0, 1.0, 6.0, 1.0);
  const double s = 1.0;
  // comm + dealias(f * Lambda^s h) == Lambda^s dealias(f * h).
  const RealField fp = transform_inverse(f);
  const RealField hp = transform_inverse(multiplier_lambda(h, s));
  RealField prod(g);
  for (std::size_t i = 0; i < prod.values.size(); ++i)
    prod.values[i] = fp.values[i] * hp.values[i];
  const SpectralField second = dealiased(transform_forward(prod));

  const RealField hp0 = transform_inverse(h);
  RealField prod0(g);
  for (std::size_t i = 0; i < prod0.values.size(); ++i)
    prod0.values[i] = fp.values[i] * hp0.values[i];
  const SpectralField first = multiplier_lambda(dealiased(transform_forward(prod0)), s);

  const SpectralField comm = lambda_commutator(f, h, s);
  const double defect = l2_norm(comm + second - first);
  CHECK(defect < 1e-12 * std::max(l2_norm(first), 1e-30));
}

TEST_CASE("lambda commutator check: degenerate input and exponent validation") {
  const GridSpec g = grid_of(32);
  const SpectralField f = random_power_law_field(g, 31, 2.0, 1.0, 6.0, 1.0);
  const SpectralField gg = random_power_law_field(g, 32, 2.0, 1.0, 6.0, 1.0);

  const InequalityReport r =
      lambda_commutator_check(constant_field(g, 3.0), gg, 1.0, 4.0 / 3.0, 4.0, 2.0, 4.0, 2.0);
  CHECK(r.lhs < 1e-12 * lambda_l2_norm(gg, 1.0));
  CHECK(r.ratio < 1e-12);

  CHECK_THROWS_AS(
      (void)lambda_commutator_check(f, gg, 1.0, 2.0, 4.0, 2.0, 4.0, 2.0),
      std::invalid_argument);

  const InequalityReport ok =
      lambda_commutator_check(f, gg, 1.0, 4.0 / 3.0, 4.0, 2.0, 4.0, 2.0);
  CHECK(std::isfinite(ok.ratio));
  CHECK(ok.ratio > 0.0);
}

TEST_CASE("riesz commutator: zero velocity, constant scalar, translation invariance, oracle") {
  const GridSpec g = grid_of(32);
  VectorField zero{SpectralField(g), SpectralField(g)};
  const SpectralField theta = random_power_law_field(g, 41, 2.0, 1.0, 6.0, 1.0);
  for (const auto& v : riesz_commutator(zero, theta).coeffs) CHECK(std::abs(v) == 0.0);

  const VectorField u = biot_savart(random_power_law_field(g, 42, 2.0, 1.0, 6.0, 1.0));
  for (const auto& v : riesz_commutator(u, constant_field(g, 4.0)).coeffs)
    CHECK(std::abs(v) < 1e-14);

  // Uniform velocity: translation commutes with every Fourier multiplier.
  VectorField unif{SpectralField(g), SpectralField(g)};
  unif.u1.coeffs[0] = 0.6;
  unif.u2.coeffs[0] = -1.1;
  double scale = 0.0;
  for (const auto& v : riesz_commutator(unif, theta).coeffs) scale = std::max(scale, std::abs(v));
  CHECK(scale < 1e-12);

  // Divergent input is rejected.
  VectorField bad{cosine_mode(g, 1, 0, 1.0), SpectralField(g)};
  CHECK_THROWS_AS((void)riesz_commutator(bad, theta), std::invalid_argument);

  // Brute-force agreement at n=8 with |k| <= 1 content.
  const GridSpec g8 = grid_of(8);
  const VectorField u8 = biot_savart(random_power_law_field(g8, 43, 0.0, 1.0, 1.5, 1.0));
  const SpectralField t8 = random_power_law_field(g8, 44, 0.0, 1.0, 1.5, 1.0);
  const SpectralField got = riesz_commutator(u8, t8);

  auto riesz_direct = [&](const SpectralField& x) {
    SpectralField out(g8);
    for (int m1 = 0; m1 < 8; ++m1)
      for (int m2 = 0; m2 < 8; ++m2) {
        const int k1 = g8.wavenumber(m1), k2 = g8.wavenumber(m2);
        const double kk = std::sqrt(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
        out.mode(k1, k2) = (kk == 0.0 ? 0.0 : Complex(0.0, k1 / kk)) * x.mode(k1, k2);
      }
    return out;
  };
  auto grad_dot_direct = [&](const SpectralField& x) {
    SpectralField d1(g8), d2(g8);
    for (int m1 = 0; m1 < 8; ++m1)
      for (int m2 = 0; m2 < 8; ++m2) {
        const int k1 = g8.wavenumber(m1), k2 = g8.wavenumber(m2);
        d1.mode(k1, k2) = Complex(0.0, k1) * x.mode(k1, k2);
        d2.mode(k1, k2) = Complex(0.0, k2) * x.mode(k1, k2);
      }
    return oracle::product_direct(u8.u1, d1) + oracle::product_direct(u8.u2, d2);
  };
  const SpectralField expected = riesz_direct(grad_dot_direct(t8)) - grad_dot_direct(riesz_direct(t8));
  CHECK(rel_diff(got, expected) < 1e-10);
}

TEST_CASE("riesz commutator report: degenerate and vanishing cases flag correctly") {
  const GridSpec g = grid_of(32);
  const DyadicPartition P = DyadicPartition::make(g);
  VectorField zero{SpectralField(g), SpectralField(g)};
  const SpectralField theta = random_power_law_field(g, 51, 2.0, 1.0, 6.0, 1.0);

  const RieszCommutatorReports degenerate = riesz_commutator_check(zero, theta, 2.0, P);
  CHECK(degenerate.lp_part.degenerate);
  CHECK(degenerate.besov_part.degenerate);

  const VectorField u = biot_savart(random_power_law_field(g, 52, 2.0, 1.0, 6.0, 1.0));
  const RieszCommutatorReports vanishing = riesz_commutator_check(u, constant_field(g, 2.0), 2.0, P);
  CHECK(!vanishing.lp_part.degenerate);
  CHECK(vanishing.lp_part.ratio < 1e-12);

  const RieszCommutatorReports live = riesz_commutator_check(u, theta, 2.0, P);
  CHECK(std::isfinite(live.lp_part.ratio));
  CHECK(std::isfinite(live.besov_part.ratio));
  CHECK(live.lp_part.ratio > 0.0);
}

TEST_CASE("block commutator: zero velocity and the single-mode profile identity") {
  const GridSpec g = grid_of(32);
  const DyadicPartition P = DyadicPartition::make(g);
  VectorField zero{SpectralField(g), SpectralField(g)};
  const SpectralField theta = random_power_law_field(g, 61, 2.0, 1.0, 6.0, 1.0);
  const InequalityReport z = block_commutator_check(zero, theta, 1, 2.0, P);
  CHECK(z.lhs == 0.0);

  // theta a single mode: block(theta, q) = profile * theta, so the commutator
  // is block(u.grad theta, q) - profile * (u.grad theta).
  const GridSpec g8 = grid_of(8);
  const DyadicPartition P8 = DyadicPartition::make(g8);
  const VectorField u8 = biot_savart(random_power_law_field(g8, 62, 0.0, 1.0, 1.5, 1.0));
  const SpectralField mode = cosine_mode(g8, 1, 0, 1.0);
  const int q = 0;
  const double profile = DyadicPartition::phi_profile(q, 1.0);
  const SpectralField adv = advect(u8, mode);
  const SpectralField expected = block(adv, q, P8) - profile * adv;
  const SpectralField comm = block(adv, q, P8) - advect(u8, block(mode, q, P8));
  CHECK(rel_diff(comm, expected) < 1e-13);

  CHECK_THROWS_AS((void)block_commutator_check(u8, mode, P8.j_max + 1, 2.0, P8),
                  std::invalid_argument);
}

TEST_CASE("positivity gap: exact identity at p=2, closed form at s=0, ensemble sign") {
  const GridSpec g = grid_of(32);
  for (int sample = 0; sample < 5; ++sample) {
    const SpectralField F = random_power_law_field(g, 100 + sample, 2.0, 1.0, 8.0, 1.0);
    const RealField f = transform_inverse(F);
    for (double s : {0.5, 1.0, 2.0}) {
      const double gap2 = positivity_gap(f, s, 2);
      const double scale = sobolev_norm(F, 1.0) * sobolev_norm(F, 1.0);
      CHECK(std::abs(gap2) < 1e-11 * std::max(scale, 1.0));
    }
    for (int p : {4, 6}) {
      const double gap0 = positivity_gap(f, 0.0, p);
      // Both routes quadrate |f|^p on the doubled lattice, so compare there.
      const double expected =
          (1.0 - 2.0 / p) * std::pow(lp_norm(transform_inverse(oversample2(F)), p), p);
      CHECK(gap0 == doctest::Approx(expected).epsilon(1e-10));
      for (double s : {0.5, 1.0}) {
        const double gap = positivity_gap(f, s, p);
        const double scale = std::pow(lp_norm(f, p), p - 2) *
                             sobolev_norm(F, 1.0) * sobolev_norm(F, 1.0);
        CHECK(gap >= -1e-10 * std::max(scale, 1.0));
      }
    }
  }
  RealField f(g);
  CHECK_THROWS_AS((void)positivity_gap(f, 0.5, 3), std::invalid_argument);
  CHECK_THROWS_AS((void)positivity_gap(f, 2.5, 4), std::invalid_argument);
}

TEST_CASE("log-sobolev check: degenerate zero field and the single-mode closed form") {
  const GridSpec g = grid_of(64);
  const DyadicPartition P = DyadicPartition::make(g);
  CHECK(log_sobolev_check(SpectralField(g), 3.0, P).degenerate);

  const SpectralField f = cosine_mode(g, 1, 0, 1.0, -0.5 * std::numbers::pi);  // sin x1
  const InequalityReport r = log_sobolev_check(f, 3.0, P);
  const double grad_l2 = std::numbers::pi * std::sqrt(2.0);
  const double besov = std::max(DyadicPartition::chi_profile(1.0),
                                DyadicPartition::phi_profile(0, 1.0));
  const double expected_rhs = grad_l2 + besov * std::log(std::numbers::e + grad_l2);
  CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.rhs_without_constant == doctest::Approx(expected_rhs).epsilon(1e-10));
  CHECK_THROWS_AS((void)log_sobolev_check(f, 1.5, P), std::invalid_argument);
}

TEST_CASE("heat decay: single-shell input takes the exact-decay path") {
  const GridSpec g = grid_of(64);
  const SpectralField f = cosine_mode(g, 1, 0, 1.0, -0.5 * std::numbers::pi);
  const HeatDecayReport r = heat_decay_check(f, 1.0, 2.0, 2.0);
  CHECK(r.exact_mode);
  CHECK(r.max_rel_err < 1e-12);

  SpectralField with_mean = f;
  with_mean.coeffs[0] = 1.0;
  CHECK_THROWS_AS((void)heat_decay_check(with_mean, 1.0, 2.0, 2.0), std::invalid_argument);
}

TEST_CASE("heat decay: flat-spectrum slopes sit at the dimensional predictions") {
  const GridSpec g = grid_of(64);
  const SpectralField f = flat_band_field(g, 71, 1.0, g.n / 3.0, 1.0);
  const HeatDecayReport sup = heat_decay_check(f, 1.0, kInf, kInf);
  CHECK(!sup.exact_mode);
  CHECK(sup.bound == doctest::Approx(-0.5));
  CHECK(sup.slope <= -0.4);

  const HeatDecayReport smoothing = heat_decay_check(f, 1.0, 2.0, kInf);
  CHECK(smoothing.bound == doctest::Approx(-1.0));
  CHECK(smoothing.slope <= -0.6);
}

TEST_SUITE_END();
