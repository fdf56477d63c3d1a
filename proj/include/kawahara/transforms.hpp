#pragma once

#include "kawahara/spectral_field.hpp"

namespace kawahara {

// Inverse transform: f(x_j) = (1/(2*pi*lambda)) sum_m c(m) exp(i m x_j / lambda).
PhysicalField inverse_transform(const SpectralField& f);

// Forward transform: c(m) = (2*pi*lambda/G) sum_j f(x_j) exp(-i m x_j / lambda),
// the G-point rectangle rule for the defining integral.  Exact whenever the
// sampled function is band-limited with margin (true for every product the
// toolkit forms on its alias-safe grids).  Realness is taken from the input's
// real_samples flag; the resulting coefficients are then exactly symmetrized.
SpectralField forward_transform(const PhysicalField& p);

// Band coefficients of the pointwise cube of f, |m| <= M, computed alias-free
// on the grid's G >= 4M+1 points.  Returned in the same c(m) convention.
std::vector<Complex> dealiased_cube(const SpectralField& f);

// integral of v^4 over the torus, evaluated on a dedicated >= 5M+1 grid so the
// quartic product is alias-free down to its mean.  Requires a real field.
double quartic_integral(const SpectralField& f);

// Unnormalized complex DFT of arbitrary length, for the temporal spectra the
// norm estimators build: forward maps data[j] -> sum_j data[j] e^{-2 pi i jk/n},
// backward uses e^{+2 pi i jk/n}.  Plans are cached per length.
void dft_inplace(std::vector<Complex>& data, bool forward);

}  // namespace kawahara
