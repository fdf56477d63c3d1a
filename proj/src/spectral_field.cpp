#include "kawahara/spectral_field.hpp"

#include <algorithm>
#include <cmath>

namespace kawahara {

int next_fast_fft_size(int n) {
  for (int k = std::max(n, 1);; ++k) {
    int r = k;
    for (int p : {2, 3, 5})
      while (r % p == 0) r /= p;
    if (r == 1) return k;
  }
}

TorusGrid TorusGrid::make(double lambda, int max_index) {
  return make_with_fft_size(lambda, max_index, next_fast_fft_size(4 * max_index + 1));
}

TorusGrid TorusGrid::make_with_fft_size(double lambda, int max_index, int fft_size) {
  require(lambda >= 1.0, "TorusGrid: lambda must be >= 1");
  require(max_index >= 1, "TorusGrid: max_index must be >= 1");
  require(fft_size >= 4 * max_index + 1, "TorusGrid: fft_size must be >= 4*max_index+1");
  TorusGrid g;
  g.lambda = lambda;
  g.max_index = max_index;
  g.fft_size = fft_size;
  return g;
}

SpectralField SpectralField::zeros(const TorusGrid& grid, bool realness) {
  SpectralField f;
  f.grid_ = grid;
  f.c_.assign(static_cast<std::size_t>(grid.coeff_count()), Complex{0.0, 0.0});
  f.realness_ = realness;
  return f;
}

SpectralField SpectralField::from_coeffs(const TorusGrid& grid, std::vector<Complex> coeffs,
                                         bool realness) {
  require(static_cast<int>(coeffs.size()) == grid.coeff_count(),
          "SpectralField: coefficient count must be 2*max_index+1");
  SpectralField f;
  f.grid_ = grid;
  f.c_ = std::move(coeffs);
  f.realness_ = realness;
  require(f.all_finite(), "SpectralField: coefficients must be finite");
  if (realness) {
    double scale = std::max(1.0, f.max_abs());
    require(f.hermitian_defect() <= 1e-9 * scale,
            "SpectralField: realness flag set but coefficients are not Hermitian-symmetric");
    f.symmetrize_hermitian();
  }
  return f;
}

double SpectralField::hermitian_defect() const {
  int M = grid_.max_index;
  double d = std::abs(c_[static_cast<std::size_t>(M)].imag());
  for (int m = 1; m <= M; ++m) {
    Complex diff = c_[static_cast<std::size_t>(M - m)] - std::conj(c_[static_cast<std::size_t>(M + m)]);
    d = std::max(d, std::abs(diff));
  }
  return d;
}

void SpectralField::symmetrize_hermitian() {
  int M = grid_.max_index;
  c_[static_cast<std::size_t>(M)] = Complex{c_[static_cast<std::size_t>(M)].real(), 0.0};
  for (int m = 1; m <= M; ++m) {
    Complex a = c_[static_cast<std::size_t>(M + m)];
    Complex b = std::conj(c_[static_cast<std::size_t>(M - m)]);
    Complex avg = 0.5 * (a + b);
    c_[static_cast<std::size_t>(M + m)] = avg;
    c_[static_cast<std::size_t>(M - m)] = std::conj(avg);
  }
}

double SpectralField::max_abs() const {
  double v = 0.0;
  for (const Complex& z : c_) v = std::max(v, std::abs(z));
  return v;
}

bool SpectralField::all_finite() const {
  for (const Complex& z : c_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

}  // namespace kawahara
