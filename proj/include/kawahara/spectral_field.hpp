#pragma once

#include <complex>
#include <vector>

#include "kawahara/torus_grid.hpp"

namespace kawahara {

using Complex = std::complex<double>;

// Retained Fourier data c(m) for m = -M..M (index m+M), in the convention
//
//   f(x) = (1/(2*pi*lambda)) * sum_m c(m) exp(i (m/lambda) x),
//   c(m) = integral over the torus of exp(-i (m/lambda) x) f(x) dx.
//
// realness = true promises c(-m) = conj(c(m)) and Im c(0) = 0.  Constructors
// verify this to 1e-9 relative and then symmetrize exactly, so downstream
// algebra may rely on the symmetry bit-for-bit.
class SpectralField {
 public:
  SpectralField() = default;

  static SpectralField zeros(const TorusGrid& grid, bool realness = true);
  static SpectralField from_coeffs(const TorusGrid& grid, std::vector<Complex> coeffs,
                                   bool realness);

  const TorusGrid& grid() const { return grid_; }
  bool realness() const { return realness_; }
  int max_index() const { return grid_.max_index; }

  Complex coeff(int m) const { return c_[static_cast<std::size_t>(m + grid_.max_index)]; }
  void set_coeff(int m, Complex v) { c_[static_cast<std::size_t>(m + grid_.max_index)] = v; }

  const std::vector<Complex>& raw() const { return c_; }
  std::vector<Complex>& raw() { return c_; }

  double hermitian_defect() const;  // max_m |c(-m) - conj(c(m))|, plus |Im c(0)|
  void symmetrize_hermitian();      // average conjugate pairs, zero Im c(0)
  double max_abs() const;
  bool all_finite() const;

 private:
  TorusGrid grid_;
  std::vector<Complex> c_;
  bool realness_ = true;
};

// Physical samples at x_j = 2*pi*lambda*j/G, j = 0..G-1.
struct PhysicalField {
  TorusGrid grid;
  std::vector<Complex> samples;
  bool real_samples = true;
};

}  // namespace kawahara
