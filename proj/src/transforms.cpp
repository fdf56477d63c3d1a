#include "kawahara/transforms.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace kawahara {

namespace {

// One cached FFTW plan pair (and its aligned buffers) per transform length.
// Plans use FFTW_ESTIMATE so the chosen algorithm -- and hence the exact
// floating-point result -- does not depend on runtime measurement.
class DftEngine {
 public:
  static DftEngine& instance() {
    static DftEngine e;
    return e;
  }

  // out[k] = sum_j in[j] exp(sign * 2*pi*i*j*k/G), sign = -1 forward, +1 backward.
  void dft(int G, int sign, const Complex* in, Complex* out) {
    std::lock_guard<std::mutex> lock(mu_);
    Entry& e = entry(G);
    std::memcpy(e.in, in, sizeof(Complex) * static_cast<std::size_t>(G));
    fftw_execute(sign < 0 ? e.fwd : e.bwd);
    std::memcpy(out, e.out, sizeof(Complex) * static_cast<std::size_t>(G));
  }

 private:
  struct Entry {
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
  };

  Entry& entry(int G) {
    auto it = cache_.find(G);
    if (it != cache_.end()) return it->second;
    Entry e;
    e.in = fftw_alloc_complex(static_cast<std::size_t>(G));
    e.out = fftw_alloc_complex(static_cast<std::size_t>(G));
    e.fwd = fftw_plan_dft_1d(G, e.in, e.out, FFTW_FORWARD, FFTW_ESTIMATE);
    e.bwd = fftw_plan_dft_1d(G, e.in, e.out, FFTW_BACKWARD, FFTW_ESTIMATE);
    require(e.in && e.out && e.fwd && e.bwd, "DftEngine: FFTW plan creation failed");
    return cache_.emplace(G, e).first->second;
  }

  std::map<int, Entry> cache_;
  std::mutex mu_;
};

// Scatter band coefficients into DFT wavenumber layout: index m for m >= 0,
// index G+m for m < 0; everything between stays zero.
void embed_band(const SpectralField& f, std::vector<Complex>& buf) {
  const TorusGrid& g = f.grid();
  buf.assign(static_cast<std::size_t>(g.fft_size), Complex{0.0, 0.0});
  for (int m = -g.max_index; m <= g.max_index; ++m)
    buf[static_cast<std::size_t>(m >= 0 ? m : g.fft_size + m)] = f.coeff(m);
}

}  // namespace

PhysicalField inverse_transform(const SpectralField& f) {
  const TorusGrid& g = f.grid();
  std::vector<Complex> buf, out(static_cast<std::size_t>(g.fft_size));
  embed_band(f, buf);
  DftEngine::instance().dft(g.fft_size, +1, buf.data(), out.data());
  double scale = 1.0 / g.circumference();
  for (Complex& z : out) z *= scale;
  PhysicalField p;
  p.grid = g;
  p.samples = std::move(out);
  p.real_samples = f.realness();
  return p;
}

SpectralField forward_transform(const PhysicalField& p) {
  const TorusGrid& g = p.grid;
  require(static_cast<int>(p.samples.size()) == g.fft_size,
          "forward_transform: sample count must equal fft_size");
  std::vector<Complex> out(static_cast<std::size_t>(g.fft_size));
  DftEngine::instance().dft(g.fft_size, -1, p.samples.data(), out.data());
  double scale = g.circumference() / g.fft_size;
  std::vector<Complex> c(static_cast<std::size_t>(g.coeff_count()));
  for (int m = -g.max_index; m <= g.max_index; ++m)
    c[static_cast<std::size_t>(m + g.max_index)] =
        scale * out[static_cast<std::size_t>(m >= 0 ? m : g.fft_size + m)];
  return SpectralField::from_coeffs(g, std::move(c), p.real_samples);
}

std::vector<Complex> dealiased_cube(const SpectralField& f) {
  const TorusGrid& g = f.grid();
  std::vector<Complex> buf, work(static_cast<std::size_t>(g.fft_size));
  embed_band(f, buf);
  DftEngine::instance().dft(g.fft_size, +1, buf.data(), work.data());
  double inv = 1.0 / g.circumference();
  for (Complex& z : work) {
    z *= inv;
    z = z * z * z;
  }
  DftEngine::instance().dft(g.fft_size, -1, work.data(), buf.data());
  double scale = g.circumference() / g.fft_size;
  std::vector<Complex> c(static_cast<std::size_t>(g.coeff_count()));
  for (int m = -g.max_index; m <= g.max_index; ++m)
    c[static_cast<std::size_t>(m + g.max_index)] =
        scale * buf[static_cast<std::size_t>(m >= 0 ? m : g.fft_size + m)];
  return c;
}

void dft_inplace(std::vector<Complex>& data, bool forward) {
  require(!data.empty(), "dft_inplace: empty input");
  int n = static_cast<int>(data.size());
  std::vector<Complex> out(data.size());
  DftEngine::instance().dft(n, forward ? -1 : +1, data.data(), out.data());
  data = std::move(out);
}

double quartic_integral(const SpectralField& f) {
  require(f.realness(), "quartic_integral: field must be real");
  const TorusGrid& g = f.grid();
  int G5 = next_fast_fft_size(5 * g.max_index + 1);
  std::vector<Complex> buf(static_cast<std::size_t>(G5), Complex{0.0, 0.0});
  for (int m = -g.max_index; m <= g.max_index; ++m)
    buf[static_cast<std::size_t>(m >= 0 ? m : G5 + m)] = f.coeff(m);
  std::vector<Complex> samples(static_cast<std::size_t>(G5));
  DftEngine::instance().dft(G5, +1, buf.data(), samples.data());
  double inv = 1.0 / g.circumference();
  double acc = 0.0;
  for (const Complex& z : samples) {
    double v = z.real() * inv;  // imaginary part is FFT roundoff for real fields
    double v2 = v * v;
    acc += v2 * v2;
  }
  return acc * g.circumference() / G5;
}

}  // namespace kawahara
