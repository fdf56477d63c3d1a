#include "kawahara/integrator.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "kawahara/norms.hpp"
#include "kawahara/snapshot.hpp"

namespace kawahara {

namespace {

constexpr double kBlowUpLimit = 1e12;

void axpy(SpectralField& y, double a, const SpectralField& x) {
  for (std::size_t i = 0; i < y.raw().size(); ++i) y.raw()[i] += a * x.raw()[i];
}

void check_alive(const SpectralField& f, double t) {
  if (!f.all_finite() || f.max_abs() > kBlowUpLimit)
    throw BlowUpError("integrator: solution left the trusted range", t);
}

double smoothing_sup(const SpectralField& u, const SpectralField& u0) {
  const TorusGrid& g = u.grid();
  double sup = 0.0;
  for (int m = -g.max_index; m <= g.max_index; ++m) {
    double d = std::abs(std::norm(u.coeff(m)) - std::norm(u0.coeff(m)));
    sup = std::max(sup, std::abs(g.wavenumber(m)) * d);
  }
  return sup / (g.lambda * g.lambda);
}

}  // namespace

State step(const State& s, double dt, const EvolutionForm& form) {
  require(dt != 0.0, "step: dt must be nonzero");
  const TorusGrid& g = form.grid();
  const int count = g.coeff_count();
  std::vector<Complex> half(static_cast<std::size_t>(count)), full(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    double q = form.phase(i - g.max_index);
    half[static_cast<std::size_t>(i)] = std::polar(1.0, 0.5 * dt * q);
    full[static_cast<std::size_t>(i)] = std::polar(1.0, dt * q);
  }
  auto rotate = [&](const SpectralField& f, const std::vector<Complex>& ph) {
    SpectralField out = f;
    for (int i = 0; i < count; ++i)
      out.raw()[static_cast<std::size_t>(i)] *= ph[static_cast<std::size_t>(i)];
    return out;
  };

  // Lawson RK4 in the frame rotating with the form's linear phase:
  //   n1 = N(u)
  //   n2 = N(a(u + dt/2 n1)),  a = exp(i q dt/2)
  //   n3 = N(a u + dt/2 n2)
  //   n4 = N(b u + dt a n3),   b = exp(i q dt)
  //   u+ = b u + dt/6 (b n1 + 2 a n2 + 2 a n3 + n4)
  const SpectralField& u = s.field;
  SpectralField n1 = rhs_nonlinear(s, form);

  SpectralField stage = u;
  axpy(stage, 0.5 * dt, n1);
  SpectralField n2 = rhs_nonlinear({rotate(stage, half), s.t + 0.5 * dt}, form);

  stage = rotate(u, half);
  axpy(stage, 0.5 * dt, n2);
  SpectralField n3 = rhs_nonlinear({stage, s.t + 0.5 * dt}, form);

  stage = rotate(u, full);
  SpectralField an3 = rotate(n3, half);
  axpy(stage, dt, an3);
  SpectralField n4 = rhs_nonlinear({stage, s.t + dt}, form);

  SpectralField out = rotate(u, full);
  SpectralField bn1 = rotate(n1, full);
  SpectralField an2 = rotate(n2, half);
  axpy(out, dt / 6.0, bn1);
  axpy(out, dt / 3.0, an2);
  axpy(out, dt / 3.0, an3);
  axpy(out, dt / 6.0, n4);

  check_alive(out, s.t);
  return State{std::move(out), s.t + dt};
}

Trajectory evolve(const State& s0, const EvolutionForm& form, const IntegratorConfig& cfg) {
  require(cfg.dt > 0.0, "evolve: dt must be positive");
  require(cfg.t_end > 0.0, "evolve: t_end must be positive");
  require(cfg.snapshot_stride >= 1, "evolve: snapshot_stride must be >= 1");
  double steps_real = cfg.t_end / cfg.dt;
  long long n_steps = std::llround(steps_real);
  require(n_steps >= 1 && std::abs(steps_real - static_cast<double>(n_steps)) < 1e-6,
          "evolve: t_end must be an integer number of steps");
  require(n_steps % cfg.snapshot_stride == 0,
          "evolve: snapshot_stride must divide the step count (uniform snapshot spacing)");
  int diag_stride = cfg.conservation_check_stride > 0 ? cfg.conservation_check_stride
                                                      : cfg.snapshot_stride;

  Trajectory traj;
  State s = s0;
  const SpectralField u0 = s0.field;
  auto record_snapshot = [&](const State& st) {
    traj.times.push_back(st.t);
    traj.fields.push_back(st.field);
  };
  auto record_diag = [&](const State& st) {
    DiagnosticsRow row;
    row.t = st.t;
    row.E = conserved_E(st.field);
    row.M = conserved_M(st.field);
    row.H = st.field.realness() ? conserved_H(st.field, form.params()) : 0.0;
    row.smoothing = smoothing_sup(st.field, u0);
    traj.diagnostics.push_back(row);
  };
  record_snapshot(s);
  record_diag(s);
  for (long long k = 1; k <= n_steps; ++k) {
    s = step(s, cfg.dt, form);
    // Times as multiples of dt, not accumulated sums, so snapshot spacing is
    // exactly uniform.
    s.t = s0.t + static_cast<double>(k) * cfg.dt;
    if (k % cfg.snapshot_stride == 0 || k == n_steps) record_snapshot(s);
    if (k % diag_stride == 0 || k == n_steps) record_diag(s);
  }
  return traj;
}

double interaction_derivative_check(const State& s, const EvolutionForm& form,
                                    double dt_probe) {
  require(dt_probe > 0.0, "interaction_derivative_check: dt_probe must be positive");
  const TorusGrid& g = form.grid();
  State fwd = step(s, dt_probe, form);
  State bwd = step(s, -dt_probe, form);
  SpectralField analytic = rhs_nonlinear(s, form);
  double worst = 0.0;
  for (int m = -g.max_index; m <= g.max_index; ++m) {
    Complex rot = std::polar(1.0, -form.phase(m) * dt_probe);
    Complex fd =
        (rot * fwd.field.coeff(m) - std::conj(rot) * bwd.field.coeff(m)) / (2.0 * dt_probe);
    worst = std::max(worst, std::abs(fd - analytic.coeff(m)));
  }
  return worst;
}

double default_dt(const TorusGrid& grid) {
  double m = static_cast<double>(grid.max_index);
  double cap = std::pow(grid.lambda, 5) / (m * m * m * m);
  return 1e-3 * std::min(1.0, cap);
}

void export_trajectory(const std::string& dir, const Trajectory& traj,
                       const EvolutionForm& form) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  SnapshotMeta meta;
  meta.beta = form.params().beta;
  meta.gamma = form.params().gamma;
  meta.mu = form.params().mu;
  for (std::size_t i = 0; i < traj.fields.size(); ++i) {
    meta.t = traj.times[i];
    char name[32];
    std::snprintf(name, sizeof name, "snap_%06zu.csv", i);
    write_snapshot((fs::path(dir) / name).string(), traj.fields[i], meta);
  }
  std::ofstream diag(fs::path(dir) / "diagnostics.csv");
  require(diag.good(), "export_trajectory: cannot write diagnostics.csv");
  diag << "t,E,M,H,smoothing\n";
  char buf[160];
  for (const DiagnosticsRow& r : traj.diagnostics) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.E, r.M, r.H,
                  r.smoothing);
    diag << buf;
  }
}

}  // namespace kawahara
