#pragma once

#include "kawahara/norms.hpp"
#include "kawahara/spectral_field.hpp"

namespace kawahara {

// Map a field on the unit torus to the circumference-2*pi*lambda torus:
// index set unchanged, c_lambda(m) = c(m)/lambda, so the new field carries
// wavenumbers n = m/lambda.  Homogeneous Sobolev norms scale exactly as
// dot_sobolev(rescale(u), s) = lambda^{-3/2-s} dot_sobolev(u, s).
inline SpectralField rescale(const SpectralField& u, double lambda) {
  require(u.grid().lambda == 1.0, "rescale: input must live on the unit torus");
  require(lambda >= 1.0, "rescale: lambda must be >= 1");
  TorusGrid g = TorusGrid::make_with_fft_size(lambda, u.grid().max_index, u.grid().fft_size);
  std::vector<Complex> c = u.raw();
  for (Complex& z : c) z /= lambda;
  return SpectralField::from_coeffs(g, std::move(c), u.realness());
}

}  // namespace kawahara
