#pragma once

#include <cmath>

#include "kawahara/spectral_field.hpp"

namespace kawahara {

// Sobolev norm ((1/(2*pi*lambda)) sum_m <m/lambda>^{2s} |c(m)|^2)^{1/2} with
// <x> = sqrt(1+x^2).  s = 0 is the L^2 norm (Plancherel in this convention).
inline double sobolev_norm(const SpectralField& f, double s) {
  const TorusGrid& g = f.grid();
  double acc = 0.0;
  for (int m = -g.max_index; m <= g.max_index; ++m) {
    double n = g.wavenumber(m);
    acc += std::pow(1.0 + n * n, s) * std::norm(f.coeff(m));
  }
  return std::sqrt(acc / g.circumference());
}

// Homogeneous variant |m/lambda|^{2s}, skipping m = 0.
inline double dot_sobolev_norm(const SpectralField& f, double s) {
  const TorusGrid& g = f.grid();
  double acc = 0.0;
  for (int m = -g.max_index; m <= g.max_index; ++m) {
    if (m == 0) continue;
    double n = std::abs(g.wavenumber(m));
    acc += std::pow(n, 2.0 * s) * std::norm(f.coeff(m));
  }
  return std::sqrt(acc / g.circumference());
}

inline double l2_norm(const SpectralField& f) { return sobolev_norm(f, 0.0); }

// integral of v^2 over the torus = (1/(2*pi*lambda)) sum |c|^2.
inline double l2_norm_sq(const SpectralField& f) {
  double acc = 0.0;
  for (const Complex& z : f.raw()) acc += std::norm(z);
  return acc / f.grid().circumference();
}

}  // namespace kawahara
