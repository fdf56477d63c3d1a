#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "kawahara/dispersion.hpp"
#include "kawahara/integrator.hpp"
#include "kawahara/spectral_field.hpp"

namespace kawahara {

// Even C^1 time window: identically 1 on [-inner, inner], identically 0
// outside [-outer, outer], cosine ramp in between.  The ramp's derivative
// vanishes at both junctions, so psi is continuously differentiable and its
// temporal spectrum decays fast enough for the window not to dominate the
// norms built below.
struct CutoffProfile {
  double inner = 1.0;
  double outer = 2.0;

  static CutoffProfile make(double inner, double outer);

  double value(double t) const;
};

// A trajectory resampled as plain data: uniform times plus the spectral
// coefficients at each time.  This is the input format for every space-time
// norm below; keeping it dumb lets studies synthesize fields directly instead
// of always time-stepping them.
struct SpaceTimeSample {
  TorusGrid grid;
  std::vector<double> times;
  std::vector<SpectralField> coeffs;

  static SpaceTimeSample make(const TorusGrid& grid, std::vector<double> times,
                              std::vector<SpectralField> coeffs);
  static SpaceTimeSample from_trajectory(const Trajectory& traj);

  double dt() const { return times[1] - times[0]; }
  double duration() const { return times.back() - times.front(); }
};

struct XsbResult {
  double value = 0.0;
  // Largest |phase(m)| over the band, and the temporal Nyquist rate pi/dt.
  // When the Nyquist rate is below twice the largest phase, a trajectory
  // sampled at this dt may alias envelope content between samples; the result
  // is still returned but flagged.  (The estimator's own e^{-it phase} twist
  // is applied pointwise at the sample times and is exact regardless.)
  double max_abs_phase = 0.0;
  double tau_nyquist = 0.0;
  bool tau_underresolved = false;
};

// Dispersive space-time norm of psi*u: each mode is conjugated by the free
// flow of `sym`, windowed by psi, and Fourier-transformed in time on a
// zero-padded grid; mass at temporal frequency tau is weighted by
// <tau>^{2b}, modes by <m/lambda>^{2s}, with measures (1/2pi) dtau and
// (1/(2 pi lambda)) sum_m.  The sample window must cover [-outer, outer] of
// the cutoff, so the zero extension used by the padded transform agrees with
// the (windowed) function itself.
XsbResult xsb_norm(const SpaceTimeSample& sample, double s, double b,
                   const PhaseSymbol& sym, const CutoffProfile& cutoff,
                   int pad_factor = 4);
XsbResult xsb_norm(const Trajectory& traj, double s, double b,
                   const PhaseSymbol& sym, const CutoffProfile& cutoff,
                   int pad_factor = 4);

// (integral integral |psi(t) u(t,x)|^4 dx dt)^{1/4}: trapezoid in time,
// rectangle rule in x (exact there: |u|^4 is band-limited below the grid's
// alias-safe size).
double l4_spacetime_norm(const SpaceTimeSample& sample, const CutoffProfile& cutoff);
double l4_spacetime_norm(const Trajectory& traj, const CutoffProfile& cutoff);

// Evolve v0 both ways from t = 0 so the sampled window is symmetric, as the
// time cutoffs above want.  Produces times k*dt for k in [-steps, steps],
// thinned by `stride` (which must divide steps).
SpaceTimeSample sample_symmetric_window(const SpectralField& v0,
                                        const EvolutionForm& form, double dt,
                                        long long steps_each_side, long long stride = 1);

// Lattice count of near-resonant pair interactions at target mode m and
// temporal frequency tau:
//   (1/(2 pi lambda)) sum_{m1: m1/lambda > 1, (m-m1)/lambda > 1}
//       <tau - phase(m1) - phase(m-m1)>^{1-4b}.
// Requires m/lambda > 1.  For b = 1/4 the exponent is zero and this is
// exactly (retained count)/(2 pi lambda).
double counting_M(double tau, long long m, double b, const PhaseSymbol& sym);

// How the tau axis is probed at each target mode in counting_scan: every
// retained pair-phase value S(m1) = phase(m1) + phase(m-m1) ("surface"),
// midpoints of adjacent distinct surface values, and far probes beyond the
// surface range at the listed distances.
struct CountingScanEntry {
  double lambda = 0.0;
  double n = 0.0;      // physical target frequency m/lambda
  long long m = 0;     // integer target mode
  long long retained = 0;
  double sup = 0.0;            // over the full tau grid
  double sup_surface = 0.0;    // over surface tau samples only
  double sup_off_surface = 0.0;
  double tau_at_sup = 0.0;
};

struct CountingScanReport {
  double b = 0.0;
  std::vector<double> lambdas;
  std::vector<double> n_values;        // physical target grid, shared across lambda
  std::vector<double> probe_distances;
  std::vector<CountingScanEntry> entries;
  std::vector<double> per_lambda_sup;  // aligned with lambdas
  double lambda_variation = 0.0;       // (max - min)/min of per_lambda_sup
  std::string grid_note;
};

// Scans counting_M over the documented (tau, m) grid: targets m = n*lambda for
// each physical n in n_values, tau per CountingScanEntry's description.  The
// symbol for each lambda comes from the factory, so corrected symbols (which
// carry per-lambda mass or data terms) fit the same interface.
CountingScanReport counting_scan(double b, const std::vector<double>& lambdas,
                                 const std::vector<double>& n_values,
                                 const std::function<PhaseSymbol(double)>& symbol_factory,
                                 const std::vector<double>& probe_distances = {1.0, 10.0,
                                                                               100.0});

std::string counting_scan_json(const CountingScanReport& rep);

// F(t) = (1/lambda^2) sup_m |m/lambda| * | |u(t,m)|^2 - |u(0,m)|^2 |, one
// value per trajectory snapshot.  Identically zero for the linear flow, which
// preserves every modulus.
std::vector<std::pair<double, double>> smoothing_series(const Trajectory& traj);

// Same displacement measured per dyadic shell N <= |m| < 2N (summed over the
// shell rather than sup'd), one row per snapshot.
struct DyadicSmoothingSeries {
  std::vector<long long> shell_floor;           // N = 1, 2, 4, ...
  std::vector<double> times;
  std::vector<std::vector<double>> values;      // [time][shell]
};

DyadicSmoothingSeries smoothing_dyadic_series(const Trajectory& traj);

// Least-squares-through-origin slope of a (t, F) series restricted to
// t <= t_max, plus the same fit over [0, t_max/2] and the pointwise max slope
// F(t)/t.  A line through the origin bounds the series when c_max stays
// within a modest factor of c_lsq (oscillation about the fitted line), and
// the growth is at most linear when c_lsq does not jump between the half and
// full windows (a t^p series with p > 1 roughly doubles it per doubling).
struct LinearBoundFit {
  double c_lsq = 0.0;
  double c_half = 0.0;
  double c_max = 0.0;
  std::size_t points = 0;
};

LinearBoundFit fit_linear_bound(const std::vector<std::pair<double, double>>& series,
                                double t_max);

// Ratio study ||psi u||_{L^4_{t,x}} / ||u||_{X^{0,b}} over an ensemble of
// random band-limited fields, repeated across lambda on a fixed physical
// frequency band.  Each field is u(t,m) = e^{i t phase(m)} * (trigonometric
// envelope in t), Hermitian in (m, harmonic) so u is real-valued, normalized
// to ||u(0)||_{L^2} = rho.
struct StrichartzConfig {
  DispersionParams params;
  std::vector<double> lambdas{1.0, 2.0, 4.0, 8.0};
  double band = 2.0;        // physical band: modes |m| <= band*lambda
  int harmonics = 2;        // envelope harmonics q in [-harmonics, harmonics]
  double omega0 = 1.5707963267948966;  // envelope base frequency (pi/2)
  double rho = 0.05;
  double window_inner = 1.0;           // cutoff: psi = 1 on [-inner, inner]
  double dt = 0.01;
  int ensemble = 100;
  double b = 0.31;
  std::uint64_t seed = 1;
};

struct StrichartzLambdaStats {
  double lambda = 0.0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
};

struct StrichartzResult {
  std::vector<StrichartzLambdaStats> per_lambda;
  // Ordinary least squares of max_ratio against log(lambda).
  double slope = 0.0;
  double slope_stderr = 0.0;
  bool nonpositive_within_band = false;  // slope <= 0 or slope <= 2*stderr
  std::vector<std::string> csv_rows;     // "lambda,field,l4,xsb,ratio"
};

StrichartzResult strichartz_ratio_study(const StrichartzConfig& cfg);

std::string strichartz_result_json(const StrichartzResult& res);

}  // namespace kawahara
