#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <string>

#include <kawahara/common.hpp>
#include <kawahara/evolution.hpp>
#include <kawahara/integrator.hpp>
#include <kawahara/rng.hpp>
#include <kawahara/snapshot.hpp>
#include <kawahara/spectral_field.hpp>

#include "oracle_helpers.hpp"

using namespace kawahara;

TEST_CASE("eps = 0 reproduces the free flow as an exact rotation") {
  CounterRng rng(50);
  DispersionParams p{1.0, 0.5, 1};
  TorusGrid g = TorusGrid::make(2.0, 8);
  SpectralField v0 = oracle::random_real_field(g, rng, 0, 0.5, 0.7);
  for (EvolutionKind kind : {EvolutionKind::Full, EvolutionKind::WickOrdered,
                             EvolutionKind::DataRenormalized}) {
    EvolutionForm form = EvolutionForm::make(kind, p, v0, 0.0);
    IntegratorConfig cfg;
    cfg.dt = 0.05;  // huge step: the linear rotation must still be exact
    cfg.t_end = 0.5;
    cfg.snapshot_stride = 10;
    Trajectory traj = evolve(State{v0, 0.0}, form, cfg);
    const SpectralField& vT = traj.fields.back();
    double worst = 0.0;
    for (int m = -8; m <= 8; ++m) {
      Complex expect = std::polar(1.0, cfg.t_end * form.phase(m)) * v0.coeff(m);
      worst = std::max(worst, std::abs(vT.coeff(m) - expect));
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("step refinement converges at fourth order") {
  CounterRng rng(51);
  DispersionParams p{0.5, 0.25, 1};
  TorusGrid g = TorusGrid::make(1.0, 3);
  SpectralField v0 = oracle::random_real_field(g, rng, 0, 0.5, 0.7);
  EvolutionForm form = EvolutionForm::make(EvolutionKind::Full, p, v0);

  auto final_field = [&](double dt, double T) {
    IntegratorConfig cfg;
    cfg.dt = dt;
    cfg.t_end = T;
    cfg.snapshot_stride = static_cast<int>(std::lround(T / dt));
    return evolve(State{v0, 0.0}, form, cfg).fields.back();
  };

  double T = 0.02;
  SpectralField a = final_field(1e-3, T);
  SpectralField b = final_field(5e-4, T);
  SpectralField c = final_field(2.5e-4, T);
  double e1 = oracle::max_coeff_diff(a, b);
  double e2 = oracle::max_coeff_diff(b, c);
  CHECK(e1 > 0.0);
  CHECK(oracle::observed_order(e1, e2) == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("conserved quantities hold along the discrete flow") {
  CounterRng rng(52);
  DispersionParams p{1.0, 0.25, -1};
  TorusGrid g = TorusGrid::make(2.0, 8);
  SpectralField v0 = oracle::random_real_field(g, rng, 0, 0.5, 0.6);
  EvolutionForm form = EvolutionForm::make(EvolutionKind::Full, p, v0);

  auto drift = [&](double dt) {
    IntegratorConfig cfg;
    cfg.dt = dt;
    cfg.t_end = 0.05;
    cfg.snapshot_stride = static_cast<int>(std::lround(cfg.t_end / dt));
    Trajectory traj = evolve(State{v0, 0.0}, form, cfg);
    return std::pair<DiagnosticsRow, DiagnosticsRow>{traj.diagnostics.front(),
                                                     traj.diagnostics.back()};
  };

  auto [first, last] = drift(1e-3);
  // the mean never moves: both the phase and the nonlinearity carry a factor n
  CHECK(last.E == first.E);
  CHECK(std::abs(last.M - first.M) <= 5e-11 * std::abs(first.M));
  double h1 = std::abs(last.H - first.H);
  CHECK(h1 <= 1e-7 * std::abs(first.H));
  CHECK(first.smoothing == 0.0);  // measured against the run's own initial data

  // the residual H drift is discretization error: quartering dt must shrink
  // it by roughly 4^4 (allow generous wobble, the drift oscillates in time)
  auto [f2, l2] = drift(2.5e-4);
  double h2 = std::abs(l2.H - f2.H);
  CHECK(h2 <= 1e-8 * std::abs(f2.H));
  CHECK(h1 / h2 >= 50.0);
}

TEST_CASE("the flow is reversible: forward then backward returns the data") {
  CounterRng rng(53);
  DispersionParams p{1.0, 0.5, 1};
  TorusGrid g = TorusGrid::make(2.0, 6);
  SpectralField v0 = oracle::random_real_field(g, rng, 0, 0.5, 0.5);
  EvolutionForm form = EvolutionForm::make(EvolutionKind::Full, p, v0);

  double dt = 1e-3;
  int steps = 50;
  State s{v0, 0.0};
  for (int k = 0; k < steps; ++k) s = step(s, dt, form);
  for (int k = 0; k < steps; ++k) s = step(s, -dt, form);
  CHECK(s.t == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(oracle::max_coeff_diff(s.field, v0) <= 1e-6);
}

TEST_CASE("evolve rejects a horizon that is not a whole number of steps") {
  TorusGrid g = TorusGrid::make(1.0, 2);
  SpectralField v0 = SpectralField::zeros(g);
  v0.set_coeff(1, Complex{0.1, 0.0});
  v0.set_coeff(-1, Complex{0.1, 0.0});
  DispersionParams p{0.0, 0.0, 1};
  EvolutionForm form = EvolutionForm::make(EvolutionKind::Full, p, v0);
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.0105;
  CHECK_THROWS_AS(evolve(State{v0, 0.0}, form, cfg), ContractError);
}

TEST_CASE("snapshot and diagnostics cadence follow their strides") {
  CounterRng rng(54);
  DispersionParams p{0.5, 0.0, 1};
  TorusGrid g = TorusGrid::make(1.0, 4);
  SpectralField v0 = oracle::random_real_field(g, rng, 0, 0.5, 0.3);
  EvolutionForm form = EvolutionForm::make(EvolutionKind::Full, p, v0);

  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.02;  // 20 steps
  cfg.snapshot_stride = 5;
  cfg.conservation_check_stride = 2;
  Trajectory traj = evolve(State{v0, 0.0}, form, cfg);

  REQUIRE(traj.times.size() == 5);  // t = 0 plus every 5th of 20 steps
  REQUIRE(traj.fields.size() == 5);
  for (std::size_t k = 0; k < traj.times.size(); ++k)
    CHECK(traj.times[k] == doctest::Approx(5e-3 * static_cast<double>(k)).epsilon(1e-12));
  CHECK(traj.diagnostics.size() == 11);  // steps 0, 2, ..., 20
  CHECK(traj.diagnostics[1].t == doctest::Approx(2e-3).epsilon(1e-12));
  CHECK(oracle::max_coeff_diff(traj.initial(), v0) == 0.0);
}

TEST_CASE("interaction-picture derivative check decays at second order") {
  CounterRng rng(55);
  DispersionParams p{1.0, 0.5, 1};
  TorusGrid g = TorusGrid::make(1.0, 4);
  SpectralField v0 = oracle::random_real_field(g, rng, 0, 0.5, 0.6);
  EvolutionForm form = EvolutionForm::make(EvolutionKind::Full, p, v0);
  State s{v0, 0.0};

  // probes must resolve the fastest retained phase (|p(4)| ~ 1e3), otherwise
  // the centered difference leaves the asymptotic regime
  double e1 = interaction_derivative_check(s, form, 4e-5);
  double e2 = interaction_derivative_check(s, form, 2e-5);
  double e3 = interaction_derivative_check(s, form, 1e-5);
  CHECK(e1 > 0.0);
  CHECK(oracle::observed_order(e1, e2) == doctest::Approx(2.0).epsilon(0.25));
  CHECK(oracle::observed_order(e2, e3) == doctest::Approx(2.0).epsilon(0.25));

  EvolutionForm free_form = EvolutionForm::make(EvolutionKind::Full, p, v0, 0.0);
  CHECK(interaction_derivative_check(s, free_form, 1e-3) <= 1e-12);
}

TEST_CASE("default step size: frozen heuristic values") {
  // dt = 1e-3 * min(1, lambda^5 / M^4): the exact linear rotation leaves only
  // the cross-form phase scale (M/lambda)^5 * lambda to resolve
  CHECK(default_dt(TorusGrid::make(2.0, 2)) == doctest::Approx(1e-3).epsilon(1e-15));
  CHECK(default_dt(TorusGrid::make(1.0, 4)) == doctest::Approx(1e-3 / 256.0).epsilon(1e-15));
  CHECK(default_dt(TorusGrid::make(1.0, 8)) < default_dt(TorusGrid::make(1.0, 4)));
  CHECK(default_dt(TorusGrid::make(4.0, 8)) >= default_dt(TorusGrid::make(2.0, 8)));
}

TEST_CASE("exported trajectories round-trip through the snapshot reader") {
  namespace fs = std::filesystem;
  CounterRng rng(56);
  DispersionParams p{1.5, 0.25, -1};
  TorusGrid g = TorusGrid::make(2.0, 5);
  SpectralField v0 = oracle::random_real_field(g, rng, 0, 0.5, 0.4);
  EvolutionForm form = EvolutionForm::make(EvolutionKind::Full, p, v0);

  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.01;
  cfg.snapshot_stride = 5;
  Trajectory traj = evolve(State{v0, 0.0}, form, cfg);

  fs::path dir = fs::temp_directory_path() / "kawahara_test_export";
  fs::remove_all(dir);
  fs::create_directories(dir);
  export_trajectory(dir.string(), traj, form);

  CHECK(fs::exists(dir / "diagnostics.csv"));
  for (std::size_t k = 0; k < traj.fields.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof(name), "snap_%06zu.csv", k);
    fs::path file = dir / name;
    REQUIRE(fs::exists(file));
    Snapshot snap = read_snapshot(file.string());
    CHECK(oracle::max_coeff_diff(snap.field, traj.fields[k]) == 0.0);
    CHECK(snap.meta.t == traj.times[k]);
    CHECK(snap.meta.beta == p.beta);
    CHECK(snap.meta.gamma == p.gamma);
    CHECK(snap.meta.mu == p.mu);
  }
  fs::remove_all(dir);
}

TEST_CASE("runaway amplitudes abort the march with the last finite time") {
  TorusGrid g = TorusGrid::make(1.0, 2);
  SpectralField f = SpectralField::zeros(g);
  f.set_coeff(1, Complex{1e11, 0.0});
  f.set_coeff(-1, Complex{1e11, 0.0});
  DispersionParams p{0.0, 0.0, 1};
  EvolutionForm form = EvolutionForm::make(EvolutionKind::Full, p, f);
  IntegratorConfig cfg;
  cfg.dt = 0.5;
  cfg.t_end = 2.0;
  try {
    evolve(State{f, 0.0}, form, cfg);
    FAIL("expected a blow-up abort");
  } catch (const BlowUpError& e) {
    CHECK(e.last_finite_t() >= 0.0);
    CHECK(e.last_finite_t() < cfg.t_end);
  }
}
