#pragma once

#include "kawahara/common.hpp"

namespace kawahara {

// Spectral grid on the circle of circumference 2*pi*lambda.  Retained modes are
// the integer indices |m| <= max_index; the physical wavenumber of index m is
// n = m/lambda.  fft_size >= 4*max_index + 1 guarantees that pointwise cubes of
// band-limited fields can be transformed back without aliasing into the band.
struct TorusGrid {
  double lambda = 1.0;
  int max_index = 0;  // M
  int fft_size = 0;   // G

  // G is chosen as the smallest 5-smooth integer >= 4M+1 (fast FFT lengths).
  static TorusGrid make(double lambda, int max_index);
  static TorusGrid make_with_fft_size(double lambda, int max_index, int fft_size);

  int coeff_count() const { return 2 * max_index + 1; }
  double wavenumber(int m) const { return static_cast<double>(m) / lambda; }
  double circumference() const { return kTwoPi * lambda; }
  double sample_x(int j) const { return circumference() * j / fft_size; }

  bool operator==(const TorusGrid&) const = default;
};

// Smallest integer >= n whose prime factors are all in {2,3,5}.
int next_fast_fft_size(int n);

}  // namespace kawahara
