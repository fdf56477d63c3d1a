#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include <kawahara/common.hpp>
#include <kawahara/evolution.hpp>
#include <kawahara/integrator.hpp>
#include <kawahara/norms.hpp>
#include <kawahara/rng.hpp>
#include <kawahara/spectral_field.hpp>

#include "oracle_helpers.hpp"

using namespace kawahara;

namespace {

SpectralField cosine_field(const TorusGrid& g, int mode, double amp_pi = kPi) {
  SpectralField f = SpectralField::zeros(g);
  f.set_coeff(mode, Complex{amp_pi, 0.0});
  f.set_coeff(-mode, Complex{amp_pi, 0.0});
  return f;
}

}  // namespace

TEST_CASE("full nonlinearity equals the direct convolution with its prefactor") {
  CounterRng rng(31);
  DispersionParams p{0.0, 0.0, 1};
  for (double lambda : {1.0, 2.0}) {
    TorusGrid g = TorusGrid::make(lambda, 8);
    SpectralField f = oracle::random_real_field(g, rng, lambda == 1.0 ? 0 : 1, 0.5, 0.8);
    SpectralField fast = nonlinearity_full(f, p);
    std::vector<Complex> cube = oracle::direct_cube_coeffs(f);
    double worst = 0.0;
    for (int m = -8; m <= 8; ++m) {
      Complex expect = Complex{0.0, p.mu / 3.0} * g.wavenumber(m) *
                       cube[static_cast<std::size_t>(m + 8)];
      worst = std::max(worst, std::abs(fast.coeff(m) - expect));
    }
    CHECK(worst <= 1e-12);
    CHECK(fast.coeff(0) == Complex{0.0, 0.0});  // the n factor kills the mean exactly
  }
}

TEST_CASE("resonant splitting: R1 + R2 + NR reassembles the full term") {
  CounterRng rng(32);
  DispersionParams p{1.0, 0.5, -1};
  TorusGrid g = TorusGrid::make(2.0, 16);
  for (std::uint64_t k = 0; k < 5; ++k) {
    SpectralField f = oracle::random_real_field(g, rng, k, 0.5, 1.0);
    SpectralField full = nonlinearity_full(f, p);
    ResonantSplit sp = split_resonant(f, p);
    double worst = 0.0, scale = full.max_abs();
    for (int m = -16; m <= 16; ++m)
      worst = std::max(worst, std::abs(full.coeff(m) - sp.r1.coeff(m) - sp.r2.coeff(m) -
                                       sp.nr.coeff(m)));
    CHECK(worst <= 1e-12 * std::max(1.0, scale));
  }
}

TEST_CASE("NR matches the brute-force nonresonant convolution") {
  CounterRng rng(33);
  DispersionParams p{0.5, 1.0, 1};
  TorusGrid g = TorusGrid::make(1.0, 8);
  for (std::uint64_t k = 0; k < 4; ++k) {
    SpectralField f = oracle::random_real_field(g, rng, k, 0.5, 0.9);
    ResonantSplit sp = split_resonant(f, p);
    std::vector<Complex> brute = oracle::brute_nonresonant(f, p);
    double worst = 0.0;
    for (int m = -8; m <= 8; ++m)
      worst = std::max(worst, std::abs(sp.nr.coeff(m) - brute[static_cast<std::size_t>(m + 8)]));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("cosine data: frozen split and conserved values") {
  // v = cos x: c(1) = c(-1) = pi.  Hand evaluation gives NR(1) = 0 (the
  // resonant parts absorb the whole +-1 interaction) and NR(3) = mu*i*pi/4;
  // M = pi/2, E = 0, H = pi/2 + beta*pi/2 - gamma*pi/2 + mu*pi/16.
  TorusGrid g = TorusGrid::make(1.0, 4);
  SpectralField f = cosine_field(g, 1);
  for (int mu : {1, -1}) {
    DispersionParams p{2.0, 0.75, mu};
    ResonantSplit sp = split_resonant(f, p);
    CHECK(std::abs(sp.nr.coeff(1)) <= 1e-13);
    CHECK(std::abs(sp.nr.coeff(-1)) <= 1e-13);
    CHECK(std::abs(sp.nr.coeff(3) - Complex{0.0, mu * kPi / 4.0}) <= 1e-13);
    CHECK(std::abs(sp.nr.coeff(-3) - Complex{0.0, -mu * kPi / 4.0}) <= 1e-13);

    CHECK(conserved_E(f) == doctest::Approx(0.0));
    CHECK(conserved_M(f) == doctest::Approx(kPi / 2.0).epsilon(1e-13));
    double expect_H = kPi / 2.0 + p.beta * kPi / 2.0 - p.gamma * kPi / 2.0 + mu * kPi / 16.0;
    CHECK(conserved_H(f, p) == doctest::Approx(expect_H).epsilon(1e-13));
  }
}

TEST_CASE("rhs of a real field keeps the Hermitian symmetry of a real derivative") {
  CounterRng rng(34);
  DispersionParams p{1.0, 0.25, 1};
  TorusGrid g = TorusGrid::make(2.0, 10);
  SpectralField f = oracle::random_real_field(g, rng, 0, 0.5, 0.6);
  for (EvolutionKind kind : {EvolutionKind::Full, EvolutionKind::WickOrdered,
                             EvolutionKind::DataRenormalized}) {
    EvolutionForm form = EvolutionForm::make(kind, p, f);
    SpectralField d = rhs(State{f, 0.3}, form);
    // d/dt v real means the coefficient derivative is Hermitian
    CHECK(d.hermitian_defect() <= 1e-12 * std::max(1.0, d.max_abs()));
  }
}

TEST_CASE("energy identity precursor: modulus derivative reduces to the NR imaginary part") {
  // d/dt |u(m)|^2 = 2 Re[conj(u(m)) rhs(m)]; the linear phase and both
  // resonant terms rotate u(m) without changing the modulus, so only the
  // nonresonant triple sum survives:
  //   d/dt |u(m)|^2 = -(2 mu /(3 (2 pi lambda)^2)) n Im[conj(u(m)) sum_NR uuu]
  CounterRng rng(35);
  DispersionParams p{0.5, 0.25, 1};
  TorusGrid g = TorusGrid::make(2.0, 8);
  SpectralField f = oracle::random_real_field(g, rng, 0, 0.5, 0.8);
  EvolutionForm form = EvolutionForm::make(EvolutionKind::Full, p, f);
  SpectralField d = rhs(State{f, 0.0}, form);
  double c = g.circumference();
  for (int m = -8; m <= 8; ++m) {
    double lhs = 2.0 * std::real(std::conj(f.coeff(m)) * d.coeff(m));
    Complex conv{0.0, 0.0};
    for (int m1 = -8; m1 <= 8; ++m1)
      for (int m2 = -8; m2 <= 8; ++m2) {
        int m3 = m - m1 - m2;
        if (m3 < -8 || m3 > 8) continue;
        if ((m1 + m2) == 0 || (m2 + m3) == 0 || (m3 + m1) == 0) continue;
        conv += f.coeff(m1) * f.coeff(m2) * f.coeff(m3);
      }
    double rhs_form = -(2.0 * p.mu / (3.0 * c * c)) * g.wavenumber(m) *
                      std::imag(std::conj(f.coeff(m)) * conv);
    CHECK(std::abs(lhs - rhs_form) <= 1e-11);
  }
}

TEST_CASE("hamiltonian gradient: d/dx grad H is the Full right-hand side") {
  CounterRng rng(36);
  for (int mu : {1, -1}) {
    DispersionParams p{1.5, 0.5, mu};
    TorusGrid g = TorusGrid::make(1.0, 8);
    for (std::uint64_t k = 0; k < 5; ++k) {
      SpectralField f = oracle::random_real_field(g, rng, k, 1.0, 0.7);
      EvolutionForm form = EvolutionForm::make(EvolutionKind::Full, p, f);
      SpectralField d = rhs(State{f, 0.0}, form);
      SpectralField grad = hamiltonian_gradient(f, p);
      double worst = 0.0;
      for (int m = -8; m <= 8; ++m) {
        Complex expect = Complex{0.0, g.wavenumber(m)} * grad.coeff(m);
        worst = std::max(worst, std::abs(expect - d.coeff(m)));
      }
      CHECK(worst <= 1e-11);
    }
  }
}

TEST_CASE("finite-difference directional derivative of H converges at second order") {
  CounterRng rng(37);
  DispersionParams p{1.0, 0.25, 1};
  TorusGrid g = TorusGrid::make(1.0, 6);
  SpectralField v = oracle::random_real_field(g, rng, 0, 1.0, 0.5);
  SpectralField w = oracle::random_real_field(g, rng, 1, 1.0, 0.5);
  double exact = oracle::pairing(hamiltonian_gradient(v, p), w);

  auto fd = [&](double eps) {
    SpectralField plus = v, minus = v;
    for (int m = -6; m <= 6; ++m) {
      plus.set_coeff(m, v.coeff(m) + eps * w.coeff(m));
      minus.set_coeff(m, v.coeff(m) - eps * w.coeff(m));
    }
    return std::abs((conserved_H(plus, p) - conserved_H(minus, p)) / (2.0 * eps) - exact);
  };

  double e1 = fd(1e-2), e2 = fd(5e-3), e3 = fd(2.5e-3);
  CHECK(oracle::observed_order(e1, e2) == doctest::Approx(2.0).epsilon(0.25));
  CHECK(oracle::observed_order(e2, e3) == doctest::Approx(2.0).epsilon(0.25));
}

TEST_CASE("symplectic pairing: frozen value, antisymmetry, mean-free contract") {
  TorusGrid g = TorusGrid::make(1.0, 4);
  SpectralField c = cosine_field(g, 1);
  SpectralField s = SpectralField::zeros(g);
  s.set_coeff(1, Complex{0.0, -kPi});
  s.set_coeff(-1, Complex{0.0, kPi});

  // omega(cos, sin) = integral cos * d^{-1} sin = integral cos * (-cos) = -pi
  CHECK(symplectic_form(c, s) == doctest::Approx(-kPi).epsilon(1e-13));
  CHECK(symplectic_form(s, c) == doctest::Approx(kPi).epsilon(1e-13));

  CounterRng rng(38);
  SpectralField a = oracle::random_real_field(g, rng, 0, 0.5, 1.0);
  SpectralField b = oracle::random_real_field(g, rng, 1, 0.5, 1.0);
  a.set_coeff(0, Complex{0.0, 0.0});
  b.set_coeff(0, Complex{0.0, 0.0});
  CHECK(symplectic_form(a, b) == doctest::Approx(-symplectic_form(b, a)).epsilon(1e-12));

  SpectralField with_mean = a;
  with_mean.set_coeff(0, Complex{1.0, 0.0});
  CHECK_THROWS_AS(symplectic_form(with_mean, b), ContractError);
}

TEST_CASE("gauge transform: exact inverse, moduli untouched") {
  CounterRng rng(39);
  TorusGrid g = TorusGrid::make(1.0, 6);
  SpectralField f = oracle::random_real_field(g, rng, 0, 0.5, 1.0);
  State s{f, 0.7};
  State fwd = gauge_transform(s, 2.5, -1);
  State back = gauge_transform(fwd, 2.5, -1, true);
  CHECK(oracle::max_coeff_diff(back.field, f) <= 1e-15);
  CHECK(back.t == s.t);
  for (int m = -6; m <= 6; ++m)
    CHECK(std::abs(fwd.field.coeff(m)) == doctest::Approx(std::abs(f.coeff(m))).epsilon(1e-14));
}

TEST_CASE("evolution forms expose the matching symbol and frozen data") {
  CounterRng rng(40);
  DispersionParams p{2.0, 0.5, 1};
  TorusGrid g = TorusGrid::make(2.0, 6);
  SpectralField v0 = oracle::random_real_field(g, rng, 0, 0.5, 0.4);
  double mass = l2_norm_sq(v0);

  EvolutionForm full = EvolutionForm::make(EvolutionKind::Full, p, v0);
  EvolutionForm wick = EvolutionForm::make(EvolutionKind::WickOrdered, p, v0);
  EvolutionForm data = EvolutionForm::make(EvolutionKind::DataRenormalized, p, v0, 0.5);

  CHECK(full.symbol().kind() == PhaseKind::Bare);
  CHECK(wick.symbol().kind() == PhaseKind::MassCorrected);
  CHECK(data.symbol().kind() == PhaseKind::DataCorrected);
  CHECK(full.eps() == 1.0);
  CHECK(data.eps() == 0.5);
  CHECK(wick.v0_mass() == doctest::Approx(mass).epsilon(1e-14));
  CHECK(data.v0_modulus_sq(3) == doctest::Approx(std::norm(v0.coeff(3))).epsilon(1e-14));
  for (int m = -6; m <= 6; ++m) {
    CHECK(full.phase(m) == doctest::Approx(full.symbol().phase(m)).epsilon(1e-15));
    CHECK(data.phase(m) == doctest::Approx(data.symbol().phase(m)).epsilon(1e-15));
  }
}

TEST_CASE("the three forms generate the same flow through the phase maps") {
  // Full and Wick solutions differ by the exact mode-wise twist
  // e^{2 i t (p_mass - p_bare)(m)}.  Factor two: substituting
  // w(m) = e^{i t phi(m)} v(m) into the Full equation produces an extra
  // i phi w, and the Wick right-hand side differs from the Full one by
  // -2 i mu n sigma0 w (one sigma0 from the absorbed phase, one from the
  // dropped pair term, which equals sigma0 along mass-conserving solutions).
  // phi linear in m commutes with the cubic convolution, so phi = 2(p_m - p_b)
  // closes the identity exactly.  Wick and DataRenormalized have
  // pointwise-identical right-hand sides.  All three numerical flows must
  // land on the same field up to integrator error.
  CounterRng rng(41);
  DispersionParams p{1.0, 0.25, 1};
  TorusGrid g = TorusGrid::make(1.0, 4);
  SpectralField v0 = oracle::random_real_field(g, rng, 0, 0.5, 0.2);

  IntegratorConfig cfg;
  cfg.dt = 1e-4;
  cfg.t_end = 0.02;
  cfg.snapshot_stride = 200;

  EvolutionForm full = EvolutionForm::make(EvolutionKind::Full, p, v0);
  EvolutionForm wick = EvolutionForm::make(EvolutionKind::WickOrdered, p, v0);
  EvolutionForm data = EvolutionForm::make(EvolutionKind::DataRenormalized, p, v0);

  SpectralField vT = evolve(State{v0, 0.0}, full, cfg).fields.back();
  SpectralField wT = evolve(State{v0, 0.0}, wick, cfg).fields.back();
  SpectralField dT = evolve(State{v0, 0.0}, data, cfg).fields.back();

  PhaseSymbol pb = full.symbol();
  PhaseSymbol pm = wick.symbol();
  double T = cfg.t_end;
  double worst_fw = 0.0, worst_wd = 0.0;
  for (int m = -4; m <= 4; ++m) {
    Complex twist = std::polar(1.0, 2.0 * T * (pm.phase(m) - pb.phase(m)));
    worst_fw = std::max(worst_fw, std::abs(twist * vT.coeff(m) - wT.coeff(m)));
    worst_wd = std::max(worst_wd, std::abs(wT.coeff(m) - dT.coeff(m)));
  }
  CHECK(worst_fw <= 1e-9);
  CHECK(worst_wd <= 1e-9);
}

TEST_CASE("blow-up guard: escaping coefficients abort with the last finite time") {
  TorusGrid g = TorusGrid::make(1.0, 2);
  SpectralField f = SpectralField::zeros(g);
  f.set_coeff(1, Complex{1e11, 0.0});
  f.set_coeff(-1, Complex{1e11, 0.0});
  DispersionParams p{0.0, 0.0, 1};
  EvolutionForm form = EvolutionForm::make(EvolutionKind::Full, p, f);
  // the cubic term at amplitude 1e11 overflows the 1e12 coefficient guard
  // within a step of size 1
  CHECK_THROWS_AS(step(State{f, 0.0}, 1.0, form), BlowUpError);
  try {
    step(State{f, 0.0}, 1.0, form);
  } catch (const BlowUpError& e) {
    CHECK(e.last_finite_t() == doctest::Approx(0.0));
  }
}
