#pragma once

// Shared independent oracles for the test suites.  Everything here is written
// the slow, obvious way (triple loops, direct quadrature) so a bug in the
// library's fast paths cannot hide in a shared shortcut.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <kawahara/dispersion.hpp>
#include <kawahara/rng.hpp>
#include <kawahara/spectral_field.hpp>

namespace oracle {

using kawahara::Complex;
using kawahara::SpectralField;
using kawahara::TorusGrid;

// Random real field with |c(m)| ~ amp * <m>^{-decay}; each retained mode gets
// an independent complex normal draw, the negative side mirrors it so the
// field is exactly Hermitian.  Streams keep ensemble members independent.
inline SpectralField random_real_field(const TorusGrid& grid, const kawahara::CounterRng& rng,
                                       std::uint64_t stream, double decay, double amp) {
  std::vector<Complex> c(static_cast<std::size_t>(grid.coeff_count()), Complex{0.0, 0.0});
  int M = grid.max_index;
  c[static_cast<std::size_t>(M)] = Complex{amp * rng.normal(stream, 0), 0.0};
  for (int m = 1; m <= M; ++m) {
    double scale = amp * std::pow(1.0 + m * m, -0.5 * decay);
    Complex z{scale * rng.normal(stream, static_cast<std::uint64_t>(2 * m)),
              scale * rng.normal(stream, static_cast<std::uint64_t>(2 * m + 1))};
    c[static_cast<std::size_t>(M + m)] = z;
    c[static_cast<std::size_t>(M - m)] = std::conj(z);
  }
  return SpectralField::from_coeffs(grid, std::move(c), true);
}

// O(M^3) direct triple convolution: sum over m1+m2+m3 = m of c(m1)c(m2)c(m3)
// with every index retained.  The reference for the dealiased pointwise-cube
// route.
inline std::vector<Complex> direct_cube_coeffs(const SpectralField& f) {
  int M = f.max_index();
  std::vector<Complex> out(static_cast<std::size_t>(2 * M + 1), Complex{0.0, 0.0});
  for (int m1 = -M; m1 <= M; ++m1)
    for (int m2 = -M; m2 <= M; ++m2)
      for (int m3 = -M; m3 <= M; ++m3) {
        int m = m1 + m2 + m3;
        if (m < -M || m > M) continue;
        out[static_cast<std::size_t>(m + M)] += f.coeff(m1) * f.coeff(m2) * f.coeff(m3);
      }
  // f^3's coefficient in the (1/(2 pi lambda)) inversion convention
  double c = f.grid().circumference();
  for (Complex& z : out) z /= c * c;
  return out;
}

// Brute-force nonresonant part of the cubic term: the same sum restricted to
// (m1+m2)(m2+m3)(m3+m1) != 0, carrying the full nonlinearity prefactor
// (mu i / 3) (m/lambda) (2 pi lambda)^{-2}.
inline std::vector<Complex> brute_nonresonant(const SpectralField& f,
                                              const kawahara::DispersionParams& p) {
  int M = f.max_index();
  double lam = f.grid().lambda;
  std::vector<Complex> out(static_cast<std::size_t>(2 * M + 1), Complex{0.0, 0.0});
  for (int m1 = -M; m1 <= M; ++m1)
    for (int m2 = -M; m2 <= M; ++m2)
      for (int m3 = -M; m3 <= M; ++m3) {
        int m = m1 + m2 + m3;
        if (m < -M || m > M) continue;
        if ((m1 + m2) == 0 || (m2 + m3) == 0 || (m3 + m1) == 0) continue;
        out[static_cast<std::size_t>(m + M)] += f.coeff(m1) * f.coeff(m2) * f.coeff(m3);
      }
  double c = f.grid().circumference();
  for (int m = -M; m <= M; ++m) {
    Complex pref = Complex{0.0, p.mu / 3.0} * (static_cast<double>(m) / lam) / (c * c);
    out[static_cast<std::size_t>(m + M)] *= pref;
  }
  return out;
}

// integral of f * g over the torus from the coefficients, real fields:
// (1/(2 pi lambda)) sum_m f(m) conj(g(m)).
inline double pairing(const SpectralField& f, const SpectralField& g) {
  double acc = 0.0;
  for (int m = -f.max_index(); m <= f.max_index(); ++m)
    acc += std::real(f.coeff(m) * std::conj(g.coeff(m)));
  return acc / f.grid().circumference();
}

inline double max_coeff_diff(const SpectralField& a, const SpectralField& b) {
  double worst = 0.0;
  for (int m = -a.max_index(); m <= a.max_index(); ++m)
    worst = std::max(worst, std::abs(a.coeff(m) - b.coeff(m)));
  return worst;
}

// log2 of the error contraction between two grid halvings: 4th-order schemes
// land near 4, 2nd-order near 2.
inline double observed_order(double err_coarse, double err_fine) {
  return std::log2(err_coarse / err_fine);
}

}  // namespace oracle
