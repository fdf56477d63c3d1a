#include "kawahara/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "kawahara/norms.hpp"
#include "kawahara/rng.hpp"
#include "kawahara/transforms.hpp"

namespace kawahara {

namespace {

double bracket(double x) { return std::sqrt(1.0 + x * x); }

void check_uniform(const std::vector<double>& times, const char* who) {
  require(times.size() >= 2, std::string(who) + ": need at least two time samples");
  double dt = times[1] - times[0];
  require(dt > 0.0, std::string(who) + ": times must be strictly increasing");
  for (std::size_t j = 1; j < times.size(); ++j) {
    double expected = times[0] + static_cast<double>(j) * dt;
    require(std::abs(times[j] - expected) <= 1e-9 * std::max(1.0, std::abs(expected)),
            std::string(who) + ": time samples must be uniformly spaced");
  }
}

void check_covers_cutoff(const SpaceTimeSample& sample, const CutoffProfile& cutoff,
                         const char* who) {
  double tol = 1e-9 * std::max(1.0, cutoff.outer);
  require(sample.times.front() <= -cutoff.outer + tol &&
              sample.times.back() >= cutoff.outer - tol,
          std::string(who) + ": sample window too short for the cutoff support");
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

CutoffProfile CutoffProfile::make(double inner, double outer) {
  require(inner > 0.0 && outer > inner, "CutoffProfile: need 0 < inner < outer");
  CutoffProfile p;
  p.inner = inner;
  p.outer = outer;
  return p;
}

double CutoffProfile::value(double t) const {
  double a = std::abs(t);
  if (a <= inner) return 1.0;
  if (a >= outer) return 0.0;
  return 0.5 * (1.0 + std::cos(kPi * (a - inner) / (outer - inner)));
}

SpaceTimeSample SpaceTimeSample::make(const TorusGrid& grid, std::vector<double> times,
                                      std::vector<SpectralField> coeffs) {
  require(times.size() == coeffs.size(),
          "SpaceTimeSample: times and coefficient rows must pair up");
  check_uniform(times, "SpaceTimeSample");
  for (const SpectralField& f : coeffs)
    require(f.grid() == grid, "SpaceTimeSample: all rows must live on the same grid");
  SpaceTimeSample s;
  s.grid = grid;
  s.times = std::move(times);
  s.coeffs = std::move(coeffs);
  return s;
}

SpaceTimeSample SpaceTimeSample::from_trajectory(const Trajectory& traj) {
  require(!traj.fields.empty(), "SpaceTimeSample: empty trajectory");
  return make(traj.fields.front().grid(), traj.times, traj.fields);
}

XsbResult xsb_norm(const SpaceTimeSample& sample, double s, double b,
                   const PhaseSymbol& sym, const CutoffProfile& cutoff, int pad_factor) {
  require(b >= 0.0, "xsb_norm: b must be nonnegative");
  require(pad_factor >= 1, "xsb_norm: pad_factor must be >= 1");
  const TorusGrid& g = sample.grid;
  require(sym.lambda() == g.lambda, "xsb_norm: symbol and sample disagree on lambda");
  check_covers_cutoff(sample, cutoff, "xsb_norm");

  const std::size_t j_count = sample.times.size();
  const double dt = sample.dt();
  const int n_pad = next_fast_fft_size(pad_factor * static_cast<int>(j_count));

  XsbResult res;
  for (int m = -g.max_index; m <= g.max_index; ++m)
    res.max_abs_phase = std::max(res.max_abs_phase, std::abs(sym.phase(m)));
  res.tau_nyquist = kPi / dt;
  res.tau_underresolved = res.tau_nyquist < 2.0 * res.max_abs_phase;

  std::vector<double> psi(j_count);
  for (std::size_t j = 0; j < j_count; ++j) psi[j] = cutoff.value(sample.times[j]);

  // <tau_k>^{2b} on the padded grid's signed frequencies tau = 2 pi k/(n_pad dt).
  std::vector<double> tau_weight(static_cast<std::size_t>(n_pad));
  for (int k = 0; k < n_pad; ++k) {
    int signed_k = 2 * k < n_pad ? k : k - n_pad;
    double tau = kTwoPi * signed_k / (n_pad * dt);
    tau_weight[static_cast<std::size_t>(k)] = std::pow(bracket(tau), 2.0 * b);
  }

  double total = 0.0;
  std::vector<Complex> buf;
  for (int m = -g.max_index; m <= g.max_index; ++m) {
    double q = sym.phase(m);
    buf.assign(static_cast<std::size_t>(n_pad), Complex{0.0, 0.0});
    for (std::size_t j = 0; j < j_count; ++j)
      buf[j] = psi[j] * std::polar(1.0, -sample.times[j] * q) * sample.coeffs[j].coeff(m);
    dft_inplace(buf, true);
    double inner = 0.0;
    for (int k = 0; k < n_pad; ++k)
      inner += tau_weight[static_cast<std::size_t>(k)] * std::norm(buf[static_cast<std::size_t>(k)]);
    // (dt/n_pad) sum_k = (1/2pi) integral dtau of |dt * DFT|^2, the rectangle
    // rule for the windowed function's transform.
    total += std::pow(bracket(g.wavenumber(m)), 2.0 * s) * inner * dt /
             static_cast<double>(n_pad);
  }
  res.value = std::sqrt(total / g.circumference());
  return res;
}

XsbResult xsb_norm(const Trajectory& traj, double s, double b, const PhaseSymbol& sym,
                   const CutoffProfile& cutoff, int pad_factor) {
  return xsb_norm(SpaceTimeSample::from_trajectory(traj), s, b, sym, cutoff, pad_factor);
}

double l4_spacetime_norm(const SpaceTimeSample& sample, const CutoffProfile& cutoff) {
  const TorusGrid& g = sample.grid;
  check_covers_cutoff(sample, cutoff, "l4_spacetime_norm");
  const double dt = sample.dt();
  const double dx = g.circumference() / g.fft_size;
  double acc = 0.0;
  for (std::size_t j = 0; j < sample.times.size(); ++j) {
    double psi = cutoff.value(sample.times[j]);
    if (psi == 0.0) continue;
    double wt = (j == 0 || j + 1 == sample.times.size()) ? 0.5 * dt : dt;
    PhysicalField phys = inverse_transform(sample.coeffs[j]);
    double slice = 0.0;
    for (const Complex& z : phys.samples) {
      double a2 = std::norm(z) * psi * psi;
      slice += a2 * a2;
    }
    acc += wt * slice * dx;
  }
  return std::pow(acc, 0.25);
}

double l4_spacetime_norm(const Trajectory& traj, const CutoffProfile& cutoff) {
  return l4_spacetime_norm(SpaceTimeSample::from_trajectory(traj), cutoff);
}

SpaceTimeSample sample_symmetric_window(const SpectralField& v0, const EvolutionForm& form,
                                        double dt, long long steps_each_side,
                                        long long stride) {
  require(dt > 0.0, "sample_symmetric_window: dt must be positive");
  require(steps_each_side >= 1, "sample_symmetric_window: need at least one step");
  require(stride >= 1 && steps_each_side % stride == 0,
          "sample_symmetric_window: stride must divide steps_each_side");
  std::size_t rows = static_cast<std::size_t>(2 * (steps_each_side / stride) + 1);
  std::vector<double> times(rows);
  std::vector<SpectralField> coeffs(rows, v0);
  std::size_t mid = rows / 2;
  times[mid] = 0.0;

  State s{v0, 0.0};
  for (long long k = 1; k <= steps_each_side; ++k) {
    s = step(s, dt, form);
    s.t = static_cast<double>(k) * dt;
    if (k % stride == 0) {
      times[mid + static_cast<std::size_t>(k / stride)] = s.t;
      coeffs[mid + static_cast<std::size_t>(k / stride)] = s.field;
    }
  }
  s = State{v0, 0.0};
  for (long long k = 1; k <= steps_each_side; ++k) {
    s = step(s, -dt, form);
    s.t = -static_cast<double>(k) * dt;
    if (k % stride == 0) {
      times[mid - static_cast<std::size_t>(k / stride)] = s.t;
      coeffs[mid - static_cast<std::size_t>(k / stride)] = s.field;
    }
  }
  return SpaceTimeSample::make(v0.grid(), std::move(times), std::move(coeffs));
}

double counting_M(double tau, long long m, double b, const PhaseSymbol& sym) {
  const double lambda = sym.lambda();
  require(static_cast<double>(m) / lambda > 1.0, "counting_M: need m/lambda > 1");
  const double exponent = 1.0 - 4.0 * b;
  double sum = 0.0;
  for (long long m1 = 1; m1 < m; ++m1) {
    if (static_cast<double>(m1) <= lambda || static_cast<double>(m - m1) <= lambda) continue;
    double gap = tau - sym.phase(m1) - sym.phase(m - m1);
    sum += std::pow(bracket(gap), exponent);
  }
  return sum / (kTwoPi * lambda);
}

CountingScanReport counting_scan(double b, const std::vector<double>& lambdas,
                                 const std::vector<double>& n_values,
                                 const std::function<PhaseSymbol(double)>& symbol_factory,
                                 const std::vector<double>& probe_distances) {
  require(!lambdas.empty() && !n_values.empty(), "counting_scan: empty grid");
  CountingScanReport rep;
  rep.b = b;
  rep.lambdas = lambdas;
  rep.n_values = n_values;
  rep.probe_distances = probe_distances;
  rep.grid_note =
      "targets m = n*lambda on the shared physical n grid; tau grid per target: every "
      "retained pair-phase value phase(m1)+phase(m-m1), midpoints of adjacent distinct "
      "values, and probes at min-D / max+D for each listed distance D";

  for (double lambda : lambdas) {
    PhaseSymbol sym = symbol_factory(lambda);
    require(sym.lambda() == lambda, "counting_scan: factory returned mismatched lambda");
    double lam_sup = 0.0;
    for (double n : n_values) {
      require(n > 1.0, "counting_scan: physical targets must satisfy n > 1");
      long long m = std::llround(n * lambda);
      require(std::abs(n * lambda - static_cast<double>(m)) <= 1e-9,
              "counting_scan: n*lambda must be an integer mode");
      CountingScanEntry entry;
      entry.lambda = lambda;
      entry.n = n;
      entry.m = m;

      std::vector<double> surface;
      for (long long m1 = 1; m1 < m; ++m1) {
        if (static_cast<double>(m1) <= lambda || static_cast<double>(m - m1) <= lambda)
          continue;
        surface.push_back(sym.phase(m1) + sym.phase(m - m1));
      }
      entry.retained = static_cast<long long>(surface.size());
      if (!surface.empty()) {
        std::sort(surface.begin(), surface.end());
        surface.erase(std::unique(surface.begin(), surface.end()), surface.end());
        std::vector<std::pair<double, bool>> taus;  // (tau, on_surface)
        for (double t : surface) taus.emplace_back(t, true);
        for (std::size_t i = 0; i + 1 < surface.size(); ++i)
          taus.emplace_back(0.5 * (surface[i] + surface[i + 1]), false);
        for (double d : probe_distances) {
          taus.emplace_back(surface.front() - d, false);
          taus.emplace_back(surface.back() + d, false);
        }
        for (const auto& [tau, on_surface] : taus) {
          double value = counting_M(tau, m, b, sym);
          if (value > entry.sup) {
            entry.sup = value;
            entry.tau_at_sup = tau;
          }
          if (on_surface)
            entry.sup_surface = std::max(entry.sup_surface, value);
          else
            entry.sup_off_surface = std::max(entry.sup_off_surface, value);
        }
      }
      lam_sup = std::max(lam_sup, entry.sup);
      rep.entries.push_back(entry);
    }
    rep.per_lambda_sup.push_back(lam_sup);
  }

  double lo = *std::min_element(rep.per_lambda_sup.begin(), rep.per_lambda_sup.end());
  double hi = *std::max_element(rep.per_lambda_sup.begin(), rep.per_lambda_sup.end());
  if (hi <= 0.0)
    rep.lambda_variation = 0.0;
  else
    rep.lambda_variation = lo > 0.0 ? (hi - lo) / lo : std::numeric_limits<double>::infinity();
  return rep;
}

std::string counting_scan_json(const CountingScanReport& rep) {
  nlohmann::ordered_json j;
  j["b"] = rep.b;
  j["lambdas"] = rep.lambdas;
  j["n_values"] = rep.n_values;
  j["probe_distances"] = rep.probe_distances;
  j["grid"] = rep.grid_note;
  j["per_lambda_sup"] = rep.per_lambda_sup;
  j["lambda_variation"] = rep.lambda_variation;
  j["entries"] = nlohmann::ordered_json::array();
  for (const CountingScanEntry& e : rep.entries) {
    nlohmann::ordered_json row;
    row["lambda"] = e.lambda;
    row["n"] = e.n;
    row["m"] = e.m;
    row["retained"] = e.retained;
    row["sup"] = e.sup;
    row["sup_surface"] = e.sup_surface;
    row["sup_off_surface"] = e.sup_off_surface;
    row["tau_at_sup"] = e.tau_at_sup;
    j["entries"].push_back(row);
  }
  return j.dump(2);
}

std::vector<std::pair<double, double>> smoothing_series(const Trajectory& traj) {
  require(!traj.fields.empty(), "smoothing_series: empty trajectory");
  const SpectralField& u0 = traj.initial();
  const TorusGrid& g = u0.grid();
  std::vector<std::pair<double, double>> out;
  out.reserve(traj.times.size());
  for (std::size_t j = 0; j < traj.times.size(); ++j) {
    double sup = 0.0;
    for (int m = -g.max_index; m <= g.max_index; ++m) {
      double d = std::abs(std::norm(traj.fields[j].coeff(m)) - std::norm(u0.coeff(m)));
      sup = std::max(sup, std::abs(g.wavenumber(m)) * d);
    }
    out.emplace_back(traj.times[j], sup / (g.lambda * g.lambda));
  }
  return out;
}

DyadicSmoothingSeries smoothing_dyadic_series(const Trajectory& traj) {
  require(!traj.fields.empty(), "smoothing_dyadic_series: empty trajectory");
  const SpectralField& u0 = traj.initial();
  const TorusGrid& g = u0.grid();
  DyadicSmoothingSeries out;
  for (long long n = 1; n <= g.max_index; n *= 2) out.shell_floor.push_back(n);
  out.times = traj.times;
  out.values.resize(traj.times.size());
  for (std::size_t j = 0; j < traj.times.size(); ++j) {
    out.values[j].assign(out.shell_floor.size(), 0.0);
    for (std::size_t sh = 0; sh < out.shell_floor.size(); ++sh) {
      long long lo = out.shell_floor[sh];
      long long hi = std::min<long long>(2 * lo - 1, g.max_index);
      double sum = 0.0;
      for (long long a = lo; a <= hi; ++a) {
        for (long long m : {a, -a}) {
          double d =
              std::abs(std::norm(traj.fields[j].coeff(m)) - std::norm(u0.coeff(m)));
          sum += std::abs(g.wavenumber(static_cast<int>(m))) * d;
        }
      }
      out.values[j][sh] = sum / (g.lambda * g.lambda);
    }
  }
  return out;
}

LinearBoundFit fit_linear_bound(const std::vector<std::pair<double, double>>& series,
                                double t_max) {
  LinearBoundFit fit;
  double st2 = 0.0, stf = 0.0, st2_half = 0.0, stf_half = 0.0;
  for (const auto& [t, f] : series) {
    if (t <= 0.0 || t > t_max) continue;
    ++fit.points;
    st2 += t * t;
    stf += t * f;
    if (t <= 0.5 * t_max) {
      st2_half += t * t;
      stf_half += t * f;
    }
    fit.c_max = std::max(fit.c_max, f / t);
  }
  if (st2 > 0.0) fit.c_lsq = stf / st2;
  if (st2_half > 0.0) fit.c_half = stf_half / st2_half;
  return fit;
}

StrichartzResult strichartz_ratio_study(const StrichartzConfig& cfg) {
  cfg.params.validate();
  require(cfg.b > 0.3, "strichartz_ratio_study: need b > 3/10");
  require(cfg.rho > 0.0, "strichartz_ratio_study: rho must be positive");
  require(cfg.ensemble >= 2, "strichartz_ratio_study: need at least two fields");
  require(cfg.lambdas.size() >= 2, "strichartz_ratio_study: need at least two lambdas");
  require(cfg.harmonics >= 0 && cfg.omega0 > 0.0 && cfg.dt > 0.0 && cfg.window_inner > 0.0,
          "strichartz_ratio_study: invalid envelope parameters");

  const CutoffProfile cutoff = CutoffProfile::make(cfg.window_inner, 2.0 * cfg.window_inner);
  const long long steps = std::llround(2.0 * cfg.window_inner / cfg.dt);
  require(std::abs(static_cast<double>(steps) * cfg.dt - 2.0 * cfg.window_inner) <= 1e-9,
          "strichartz_ratio_study: dt must divide the window length");
  const int q_count = 2 * cfg.harmonics + 1;
  const CounterRng rng(cfg.seed);

  StrichartzResult res;
  res.csv_rows.push_back("lambda,field,l4,xsb,ratio");
  for (std::size_t li = 0; li < cfg.lambdas.size(); ++li) {
    const double lambda = cfg.lambdas[li];
    const int max_index = static_cast<int>(std::llround(cfg.band * lambda));
    require(std::abs(cfg.band * lambda - max_index) <= 1e-9 && max_index >= 1,
            "strichartz_ratio_study: band*lambda must be a positive integer");
    const TorusGrid grid = TorusGrid::make(lambda, max_index);
    const PhaseSymbol sym = PhaseSymbol::bare(cfg.params, lambda);

    StrichartzLambdaStats stats;
    stats.lambda = lambda;
    double ratio_sum = 0.0;
    for (int field = 0; field < cfg.ensemble; ++field) {
      const std::uint64_t stream = li * 1000003ULL + static_cast<std::uint64_t>(field);
      // Hermitian envelope A(-m,-q) = conj A(m,q), so every time slice is the
      // spectrum of a real function.
      std::vector<std::vector<Complex>> env(
          static_cast<std::size_t>(2 * max_index + 1),
          std::vector<Complex>(static_cast<std::size_t>(q_count)));
      std::uint64_t ctr = 0;
      auto at = [&](int m, int q) -> Complex& {
        return env[static_cast<std::size_t>(m + max_index)]
                  [static_cast<std::size_t>(q + cfg.harmonics)];
      };
      for (int m = 0; m <= max_index; ++m) {
        for (int q = -cfg.harmonics; q <= cfg.harmonics; ++q) {
          if (m == 0 && q < 0) continue;
          double re = rng.normal(stream, ctr++);
          double im = (m == 0 && q == 0) ? 0.0 : rng.normal(stream, ctr++);
          at(m, q) = Complex{re, im};
          at(-m, -q) = std::conj(Complex{re, im});
        }
      }

      std::vector<Complex> u0(static_cast<std::size_t>(2 * max_index + 1), Complex{0, 0});
      for (int m = -max_index; m <= max_index; ++m)
        for (int q = -cfg.harmonics; q <= cfg.harmonics; ++q)
          u0[static_cast<std::size_t>(m + max_index)] += at(m, q);
      double norm0 = l2_norm(SpectralField::from_coeffs(grid, u0, true));
      require(norm0 > 0.0, "strichartz_ratio_study: zero field excluded");
      const double scale = cfg.rho / norm0;
      for (auto& row : env)
        for (Complex& z : row) z *= scale;

      std::vector<double> times(static_cast<std::size_t>(2 * steps + 1));
      std::vector<SpectralField> rows;
      rows.reserve(times.size());
      for (long long k = -steps; k <= steps; ++k) {
        double t = static_cast<double>(k) * cfg.dt;
        times[static_cast<std::size_t>(k + steps)] = t;
        std::vector<Complex> c(static_cast<std::size_t>(2 * max_index + 1));
        for (int m = -max_index; m <= max_index; ++m) {
          Complex envelope{0.0, 0.0};
          for (int q = -cfg.harmonics; q <= cfg.harmonics; ++q)
            envelope += at(m, q) * std::polar(1.0, q * cfg.omega0 * t);
          c[static_cast<std::size_t>(m + max_index)] =
              std::polar(1.0, t * sym.phase(m)) * envelope;
        }
        rows.push_back(SpectralField::from_coeffs(grid, std::move(c), true));
      }
      SpaceTimeSample sample = SpaceTimeSample::make(grid, std::move(times), std::move(rows));

      double xsb = xsb_norm(sample, 0.0, cfg.b, sym, cutoff).value;
      require(xsb > 0.0, "strichartz_ratio_study: zero field excluded");
      double l4 = l4_spacetime_norm(sample, cutoff);
      double ratio = l4 / xsb;
      stats.max_ratio = std::max(stats.max_ratio, ratio);
      ratio_sum += ratio;
      res.csv_rows.push_back(fmt17(lambda) + "," + std::to_string(field) + "," + fmt17(l4) +
                             "," + fmt17(xsb) + "," + fmt17(ratio));
    }
    stats.mean_ratio = ratio_sum / cfg.ensemble;
    res.per_lambda.push_back(stats);
  }

  // max_ratio against log lambda, ordinary least squares.
  const std::size_t n = res.per_lambda.size();
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& st : res.per_lambda) {
    mean_x += std::log(st.lambda);
    mean_y += st.max_ratio;
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& st : res.per_lambda) {
    double dx = std::log(st.lambda) - mean_x;
    sxx += dx * dx;
    sxy += dx * (st.max_ratio - mean_y);
  }
  res.slope = sxy / sxx;
  if (n > 2) {
    double ss_res = 0.0;
    for (const auto& st : res.per_lambda) {
      double fitted = mean_y + res.slope * (std::log(st.lambda) - mean_x);
      double r = st.max_ratio - fitted;
      ss_res += r * r;
    }
    res.slope_stderr = std::sqrt(ss_res / static_cast<double>(n - 2) / sxx);
  }
  res.nonpositive_within_band = res.slope <= 0.0 || res.slope <= 2.0 * res.slope_stderr;
  return res;
}

std::string strichartz_result_json(const StrichartzResult& res) {
  nlohmann::ordered_json j;
  j["per_lambda"] = nlohmann::ordered_json::array();
  for (const auto& st : res.per_lambda) {
    nlohmann::ordered_json row;
    row["lambda"] = st.lambda;
    row["max_ratio"] = st.max_ratio;
    row["mean_ratio"] = st.mean_ratio;
    j["per_lambda"].push_back(row);
  }
  j["slope"] = res.slope;
  j["slope_stderr"] = res.slope_stderr;
  j["nonpositive_within_band"] = res.nonpositive_within_band;
  return j.dump(2);
}

}  // namespace kawahara
