#include "kawahara/experiments.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kawahara/common.hpp"
#include "kawahara/dispersion.hpp"
#include "kawahara/estimators.hpp"
#include "kawahara/evolution.hpp"
#include "kawahara/exact_resonance.hpp"
#include "kawahara/integrator.hpp"
#include "kawahara/multiplier.hpp"
#include "kawahara/norms.hpp"
#include "kawahara/rescale.hpp"
#include "kawahara/rng.hpp"
#include "kawahara/version.hpp"

namespace kawahara {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

// All report files go through a temp-then-rename so a crash mid-write never
// leaves a truncated manifest behind.
void write_text_atomic(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), "cannot open for writing: " + tmp.string());
    out << text;
    out.flush();
    require(out.good(), "write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

void write_csv(const fs::path& path, const std::string& header,
               const std::vector<std::string>& rows) {
  std::ostringstream out;
  out << header << "\n";
  for (const std::string& r : rows) out << r << "\n";
  write_text_atomic(path, out.str());
}

// Accumulates everything that ends up in manifest.json.  The timing object is
// appended last and is the only field allowed to differ between two runs of
// the same config and seed.
struct ManifestBuilder {
  std::string experiment;
  Json config;
  Json rng = nullptr;
  Json criteria = Json::array();
  Json reports = Json::object();
  std::vector<std::string> artifacts;
  bool all_pass = true;

  void criterion(const std::string& name, bool pass, const Json& detail) {
    Json e;
    e["name"] = name;
    e["pass"] = pass;
    for (const auto& [k, v] : detail.items()) e[k] = v;
    criteria.push_back(std::move(e));
    all_pass = all_pass && pass;
  }

  void artifact(const std::string& rel) { artifacts.push_back(rel); }

  void write(const fs::path& out_dir, int threads_requested, double wall_seconds) const {
    Json doc;
    doc["toolkit_version"] = kToolkitVersion;
    doc["experiment"] = experiment;
    doc["config"] = config;
    doc["threads"] = Json{{"requested", threads_requested}, {"effective", 1}};
    doc["rng"] = rng;
    doc["criteria"] = criteria;
    doc["all_pass"] = all_pass;
    doc["reports"] = reports;
    doc["artifacts"] = artifacts;
    doc["timing"] = Json{{"wall_seconds", wall_seconds}};
    write_text_atomic(out_dir / "manifest.json", doc.dump(2) + "\n");
  }
};

// ---------------------------------------------------------------------------
// Config plumbing

Json defaults_for(const std::string& experiment) {
  Json d;
  d["experiment"] = experiment;
  if (experiment == "conservation") {
    d["beta"] = 0.0;
    d["gamma"] = 0.0;
    d["mu"] = 1;
    d["lambda"] = 1.0;
    d["max_index"] = 16;
    d["mode"] = 1;
    d["amplitude"] = 0.1;
    d["dt"] = 1e-3;
    d["t_end"] = 1.0;
    d["snapshot_stride"] = 100;
    d["mass_tol"] = 1e-8;
    d["hamiltonian_tol"] = 1e-6;
    d["mean_tol"] = 1e-14;
  } else if (experiment == "scaling") {
    d["beta"] = 1.0;
    d["gamma"] = 0.5;
    d["mu"] = 1;
    d["max_index"] = 16;
    d["seed"] = 7;
    d["amplitude"] = 0.1;
    d["profile_decay"] = 4.0;
    d["s_values"] = Json::array({-1.0, 0.0, 0.25, 0.5, 1.0});
    d["lambda_values"] = Json::array({2.0, 4.0, 8.0});
    d["norm_tol"] = 1e-12;
    d["dynamic_lambdas"] = Json::array({1.0, 2.0});
    d["dynamic_dt"] = 1e-3;
    d["dynamic_steps"] = 20;
    d["dynamic_tol"] = 1e-6;
  } else if (experiment == "smoothing") {
    d["beta"] = 0.0;
    d["gamma"] = 0.0;
    d["mu"] = 1;
    d["lambda"] = 4.0;
    d["max_index"] = 64;
    d["s"] = 0.0;
    d["rho"] = 0.05;
    d["ensemble"] = 20;
    d["seed"] = 11;
    d["dt"] = 5e-4;
    d["t_end"] = 1.0;
    d["snapshot_stride"] = 1;
    d["slope_window"] = 0.01;
    d["linear_factor"] = 8.0;
    d["growth_factor"] = 1.6;
    d["ceiling"] = 1e-6;
    d["free_flow_tol"] = 1e-10;
  } else if (experiment == "illposed") {
    d["beta"] = 0.0;
    d["gamma"] = 0.0;
    d["mu"] = 1;
    d["s"] = 0.25;
    d["vartheta"] = 0.2;
    d["rho"] = 0.1;
    d["K_values"] = Json::array({8, 16, 32, 64});
    d["grid_factor"] = 4;
    d["dt"] = 1e-3;
    d["separation_threshold"] = 1e-4;
    d["decay_guard_factor"] = 0.5;
    d["closed_form_tol"] = 1e-12;
    d["product_tol"] = 1e-13;
    d["reference_constant"] = 4.0;
  } else if (experiment == "strichartz") {
    d["beta"] = 0.0;
    d["gamma"] = 0.0;
    d["mu"] = 1;
    d["lambda_values"] = Json::array({1.0, 2.0, 4.0, 8.0});
    d["band"] = 2.0;
    d["harmonics"] = 2;
    d["omega0"] = 1.5707963267948966;  // pi/2
    d["rho"] = 0.05;
    d["rho_max"] = 0.05;
    d["window_inner"] = 1.0;
    d["dt"] = 0.01;
    d["ensemble"] = 100;
    d["b"] = 0.31;
    d["seed"] = 1;
  } else if (experiment == "multiplier_scan") {
    d["s"] = 0.0;
    d["b"] = 0.5;
    d["delta"] = 0.05;
    d["m_abs_max"] = 128;
    d["lambda_values"] = Json::array({1.0, 2.0});
  } else if (experiment == "resonance_audit") {
    d["box"] = 20;
    d["mu"] = 1;
    d["beta_values"] = Json::array({0, 1, 2});
    d["gamma_values"] = Json::array({0.0, 1.0});
    d["lambda_values"] = Json::array({1, 2});
    d["audit_mass"] = 0.7;
    d["family_N_max"] = 64;
    d["family_ab_max"] = 8;
  } else {
    throw ContractError("unknown experiment: " + experiment);
  }
  return d;
}

Json materialize_config(const std::string& experiment, const RunOptions& opts) {
  Json cfg = defaults_for(experiment);
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    require(in.good(), "cannot open config file: " + opts.config_path);
    Json user = Json::parse(in);
    require(user.is_object(), "config root must be a JSON object");
    for (const auto& [key, value] : user.items()) {
      require(cfg.contains(key), "unknown config key for " + experiment + ": " + key);
      cfg[key] = value;
    }
    require(cfg.at("experiment").get<std::string>() == experiment,
            "config file names a different experiment than the subcommand");
  }
  if (opts.seed_overridden) {
    require(cfg.contains("seed"), "--seed does not apply to " + experiment);
    cfg["seed"] = opts.seed;
  }
  return cfg;
}

double fnum(const Json& j, const char* key) { return j.at(key).get<double>(); }
long long inum(const Json& j, const char* key) { return j.at(key).get<long long>(); }

std::vector<double> fnums(const Json& j, const char* key) {
  std::vector<double> out;
  for (const auto& v : j.at(key)) out.push_back(v.get<double>());
  require(!out.empty(), std::string("config list must be nonempty: ") + key);
  return out;
}

std::vector<long long> inums(const Json& j, const char* key) {
  std::vector<long long> out;
  for (const auto& v : j.at(key)) out.push_back(v.get<long long>());
  require(!out.empty(), std::string("config list must be nonempty: ") + key);
  return out;
}

DispersionParams params_from(const Json& cfg) {
  DispersionParams p;
  p.beta = fnum(cfg, "beta");
  p.gamma = fnum(cfg, "gamma");
  p.mu = static_cast<int>(inum(cfg, "mu"));
  p.validate();
  return p;
}

// ---------------------------------------------------------------------------
// Deterministic initial data builders

// amplitude * sin(mode * x / lambda): two coefficients -+ i pi lambda amplitude.
SpectralField sine_field(const TorusGrid& g, double amplitude, int mode) {
  require(mode >= 1 && mode <= g.max_index, "sine_field: mode outside retained band");
  std::vector<Complex> c(static_cast<std::size_t>(g.coeff_count()), Complex{0.0, 0.0});
  double a = kPi * g.lambda * amplitude;
  c[static_cast<std::size_t>(mode + g.max_index)] = Complex{0.0, -a};
  c[static_cast<std::size_t>(-mode + g.max_index)] = Complex{0.0, a};
  return SpectralField::from_coeffs(g, std::move(c), true);
}

// Hermitian field with |c(m)| ~ <m/lambda>^{-decay} Gaussian amplitudes,
// rescaled to ||v||_{L^2} = rho.  One stream per ensemble member keeps draws
// independent of evaluation order.
SpectralField random_rough_field(const TorusGrid& g, CounterRng& rng, std::uint64_t stream,
                                 double decay, double rho) {
  std::vector<Complex> c(static_cast<std::size_t>(g.coeff_count()), Complex{0.0, 0.0});
  std::uint64_t draw = 0;
  auto weight = [&](int m) {
    double n = g.wavenumber(m);
    return std::pow(1.0 + n * n, -decay / 2.0);
  };
  c[static_cast<std::size_t>(g.max_index)] = Complex{weight(0) * rng.normal(stream, draw++), 0.0};
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int m = 1; m <= g.max_index; ++m) {
    double re = rng.normal(stream, draw++);
    double im = rng.normal(stream, draw++);
    Complex z = weight(m) * inv_sqrt2 * Complex{re, im};
    c[static_cast<std::size_t>(m + g.max_index)] = z;
    c[static_cast<std::size_t>(-m + g.max_index)] = std::conj(z);
  }
  SpectralField f = SpectralField::from_coeffs(g, std::move(c), true);
  double nrm = l2_norm(f);
  require(nrm > 0.0, "random_rough_field: degenerate draw");
  std::vector<Complex> scaled = f.raw();
  for (Complex& z : scaled) z *= rho / nrm;
  return SpectralField::from_coeffs(g, std::move(scaled), true);
}

// ---------------------------------------------------------------------------
// conservation

void run_conservation(const Json& cfg, const fs::path& out, ManifestBuilder& man) {
  DispersionParams params = params_from(cfg);
  TorusGrid grid = TorusGrid::make(fnum(cfg, "lambda"), static_cast<int>(inum(cfg, "max_index")));
  SpectralField v0 = sine_field(grid, fnum(cfg, "amplitude"), static_cast<int>(inum(cfg, "mode")));
  EvolutionForm form = EvolutionForm::make(EvolutionKind::Full, params, v0);

  IntegratorConfig icfg;
  icfg.dt = fnum(cfg, "dt");
  icfg.t_end = fnum(cfg, "t_end");
  icfg.snapshot_stride = static_cast<int>(inum(cfg, "snapshot_stride"));
  icfg.conservation_check_stride = 1;
  Trajectory traj = evolve(State{v0, 0.0}, form, icfg);

  const DiagnosticsRow& d0 = traj.diagnostics.front();
  double drift_m = 0.0, drift_h = 0.0, drift_e = 0.0;
  for (const DiagnosticsRow& d : traj.diagnostics) {
    drift_m = std::max(drift_m, std::abs(d.M - d0.M) / std::abs(d0.M));
    drift_h = std::max(drift_h, std::abs(d.H - d0.H) / std::abs(d0.H));
    drift_e = std::max(drift_e, std::abs(d.E - d0.E) / std::max(1.0, std::abs(d0.E)));
  }

  export_trajectory((out / "trajectory").string(), traj, form);
  for (std::size_t k = 0; k < traj.fields.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof(name), "snap_%06zu.csv", k);
    man.artifact(std::string("trajectory/") + name);
  }
  man.artifact("trajectory/diagnostics.csv");

  man.criterion("mass_drift", drift_m <= fnum(cfg, "mass_tol"),
                Json{{"value", drift_m}, {"tolerance", fnum(cfg, "mass_tol")}});
  man.criterion("hamiltonian_drift", drift_h <= fnum(cfg, "hamiltonian_tol"),
                Json{{"value", drift_h}, {"tolerance", fnum(cfg, "hamiltonian_tol")}});
  man.criterion("mean_drift", drift_e <= fnum(cfg, "mean_tol"),
                Json{{"value", drift_e}, {"tolerance", fnum(cfg, "mean_tol")}});
  man.reports["initial"] = Json{{"E", d0.E}, {"M", d0.M}, {"H", d0.H}};
}

// ---------------------------------------------------------------------------
// scaling

void run_scaling(const Json& cfg, const fs::path& out, ManifestBuilder& man) {
  DispersionParams params = params_from(cfg);
  CounterRng rng(static_cast<std::uint64_t>(inum(cfg, "seed")));
  man.rng = rng.description();

  TorusGrid grid1 = TorusGrid::make(1.0, static_cast<int>(inum(cfg, "max_index")));
  SpectralField v =
      random_rough_field(grid1, rng, 0, fnum(cfg, "profile_decay"), fnum(cfg, "amplitude"));

  // (a) norm identity: homogeneous Sobolev norms scale as lambda^{-3/2-s}.
  std::vector<std::string> rows;
  double worst_rel = 0.0;
  for (double lambda : fnums(cfg, "lambda_values")) {
    SpectralField w = rescale(v, lambda);
    for (double s : fnums(cfg, "s_values")) {
      double ratio = dot_sobolev_norm(w, s) / dot_sobolev_norm(v, s);
      double expected = std::pow(lambda, -1.5 - s);
      double rel = std::abs(ratio / expected - 1.0);
      worst_rel = std::max(worst_rel, rel);
      rows.push_back(fmt17(lambda) + "," + fmt17(s) + "," + fmt17(ratio) + "," +
                     fmt17(expected) + "," + fmt17(rel));
    }
  }
  write_csv(out / "norm_table.csv", "lambda,s,ratio,expected,rel_err", rows);
  man.artifact("norm_table.csv");
  man.criterion("norm_identity", worst_rel <= fnum(cfg, "norm_tol"),
                Json{{"max_rel_err", worst_rel}, {"tolerance", fnum(cfg, "norm_tol")}});

  // (b) dynamic equivalence: the unit-torus run, replayed through the scaling
  // map (coefficients / lambda, coefficients beta / lambda^2, gamma / lambda^4,
  // time * lambda^5), must land on the same final state.
  double dt1 = fnum(cfg, "dynamic_dt");
  long long steps = inum(cfg, "dynamic_steps");
  require(steps >= 1, "dynamic_steps must be >= 1");
  double worst_dynamic = 0.0;
  Json dyn = Json::array();
  for (double lambda : fnums(cfg, "dynamic_lambdas")) {
    EvolutionForm form1 = EvolutionForm::make(EvolutionKind::Full, params, v);
    IntegratorConfig c1{dt1, dt1 * static_cast<double>(steps), static_cast<int>(steps),
                        static_cast<int>(steps)};
    Trajectory t1 = evolve(State{v, 0.0}, form1, c1);

    SpectralField w0 = rescale(v, lambda);
    DispersionParams ps = params;
    ps.beta = params.beta / (lambda * lambda);
    ps.gamma = params.gamma / (lambda * lambda * lambda * lambda);
    EvolutionForm forms = EvolutionForm::make(EvolutionKind::Full, ps, w0);
    double dtb = std::pow(lambda, 5.0) * dt1;
    IntegratorConfig cb{dtb, dtb * static_cast<double>(steps), static_cast<int>(steps),
                        static_cast<int>(steps)};
    Trajectory tb = evolve(State{w0, 0.0}, forms, cb);

    // invert the scaling on the final state and compare on the unit torus
    std::vector<Complex> back = tb.fields.back().raw();
    for (Complex& z : back) z *= lambda;
    SpectralField u_back = SpectralField::from_coeffs(grid1, std::move(back),
                                                      tb.fields.back().realness());
    double diff = 0.0;
    const SpectralField& ref = t1.fields.back();
    for (int m = -grid1.max_index; m <= grid1.max_index; ++m)
      diff = std::max(diff, std::abs(u_back.coeff(m) - ref.coeff(m)));
    worst_dynamic = std::max(worst_dynamic, diff);
    dyn.push_back(Json{{"lambda", lambda}, {"max_coeff_diff", diff}});
  }
  man.reports["dynamic"] = dyn;
  man.criterion("dynamic_match", worst_dynamic <= fnum(cfg, "dynamic_tol"),
                Json{{"max_coeff_diff", worst_dynamic}, {"tolerance", fnum(cfg, "dynamic_tol")}});
}

// ---------------------------------------------------------------------------
// smoothing

void run_smoothing(const Json& cfg, const fs::path& out, ManifestBuilder& man) {
  DispersionParams params = params_from(cfg);
  TorusGrid grid = TorusGrid::make(fnum(cfg, "lambda"), static_cast<int>(inum(cfg, "max_index")));
  double decay = fnum(cfg, "s") + 0.5;  // H^s-rough amplitude profile <n>^{-(s+1/2)}
  double rho = fnum(cfg, "rho");
  long long ensemble = inum(cfg, "ensemble");
  require(ensemble >= 1, "ensemble must be >= 1");
  CounterRng rng(static_cast<std::uint64_t>(inum(cfg, "seed")));
  man.rng = rng.description();

  IntegratorConfig icfg;
  icfg.dt = fnum(cfg, "dt");
  icfg.t_end = fnum(cfg, "t_end");
  icfg.snapshot_stride = static_cast<int>(inum(cfg, "snapshot_stride"));
  icfg.conservation_check_stride = static_cast<int>(inum(cfg, "snapshot_stride"));

  double window = fnum(cfg, "slope_window");
  double linear_factor = fnum(cfg, "linear_factor");
  double growth_factor = fnum(cfg, "growth_factor");

  std::vector<std::string> rows;
  bool f0_zero = true;
  bool linear_ok = true;
  double worst_point_ratio = 0.0, worst_growth_ratio = 0.0;
  double max_f = 0.0;
  double max_c_lsq = 0.0, max_c_max = 0.0;
  for (long long k = 0; k < ensemble; ++k) {
    SpectralField v0 = random_rough_field(grid, rng, static_cast<std::uint64_t>(k), decay, rho);
    EvolutionForm form = EvolutionForm::make(EvolutionKind::Full, params, v0);
    Trajectory traj = evolve(State{v0, 0.0}, form, icfg);
    auto series = smoothing_series(traj);

    f0_zero = f0_zero && (series.front().second == 0.0);
    LinearBoundFit fit = fit_linear_bound(series, window);
    // F <= C*t on the window with the fitted C: the max slope may wobble
    // about the fitted line but not exceed it by more than linear_factor, and
    // the fitted slope must not grow from the half window to the full one
    // (super-linear growth roughly doubles it per window doubling).
    auto safe_ratio = [](double num, double den) {
      if (den > 0.0) return num / den;
      return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    };
    double point_ratio = safe_ratio(fit.c_max, fit.c_lsq);
    double growth_ratio = safe_ratio(fit.c_lsq, fit.c_half);
    worst_point_ratio = std::max(worst_point_ratio, point_ratio);
    worst_growth_ratio = std::max(worst_growth_ratio, growth_ratio);
    linear_ok = linear_ok && (point_ratio <= linear_factor) && (growth_ratio <= growth_factor);
    max_c_lsq = std::max(max_c_lsq, fit.c_lsq);
    max_c_max = std::max(max_c_max, fit.c_max);

    for (const auto& [t, f] : series) {
      max_f = std::max(max_f, f);
      rows.push_back(std::to_string(k) + "," + fmt17(t) + "," + fmt17(f));
    }
    if (k == 0) {
      DyadicSmoothingSeries dy = smoothing_dyadic_series(traj);
      std::vector<std::string> drows;
      for (std::size_t ti = 0; ti < dy.times.size(); ++ti)
        for (std::size_t si = 0; si < dy.shell_floor.size(); ++si)
          drows.push_back(fmt17(dy.times[ti]) + "," + std::to_string(dy.shell_floor[si]) + "," +
                          fmt17(dy.values[ti][si]));
      write_csv(out / "smoothing_dyadic_seed0.csv", "t,shell_floor,F_shell", drows);
      man.artifact("smoothing_dyadic_seed0.csv");
    }
  }
  write_csv(out / "smoothing.csv", "seed,t,F", rows);
  man.artifact("smoothing.csv");

  // free-flow control: the linear evolution preserves every modulus, so the
  // functional must vanish to roundoff when the nonlinearity is switched off
  CounterRng rng0(static_cast<std::uint64_t>(inum(cfg, "seed")));
  SpectralField c0 = random_rough_field(grid, rng0, 0, decay, rho);
  EvolutionForm free_form = EvolutionForm::make(EvolutionKind::Full, params, c0, 0.0);
  Trajectory free_traj = evolve(State{c0, 0.0}, free_form, icfg);
  double max_f_free = 0.0;
  for (const auto& [t, f] : smoothing_series(free_traj)) max_f_free = std::max(max_f_free, f);

  man.criterion("initial_value_zero", f0_zero, Json{{"all_seeds", true}});
  man.criterion("free_flow_control", max_f_free <= fnum(cfg, "free_flow_tol"),
                Json{{"max_F", max_f_free}, {"tolerance", fnum(cfg, "free_flow_tol")}});
  man.criterion("linear_bound", linear_ok,
                Json{{"max_ratio_cmax_over_clsq", worst_point_ratio},
                     {"allowed_factor", linear_factor},
                     {"max_ratio_cfull_over_chalf", worst_growth_ratio},
                     {"allowed_growth", growth_factor},
                     {"window", window}});
  man.criterion("bounded", max_f <= fnum(cfg, "ceiling"),
                Json{{"max_F", max_f}, {"ceiling", fnum(cfg, "ceiling")}});
  man.reports["linear_fit"] = Json{{"max_c_lsq", max_c_lsq}, {"max_c_max", max_c_max}};
}

// ---------------------------------------------------------------------------
// illposed

void run_illposed(const Json& cfg, const fs::path& out, ManifestBuilder& man) {
  DispersionParams params = params_from(cfg);
  double s = fnum(cfg, "s");
  double vartheta = fnum(cfg, "vartheta");
  double rho = fnum(cfg, "rho");
  require(s >= 0.0 && s < 0.5, "illposed: s must lie in [0, 1/2)");
  require(vartheta > 0.0 && vartheta < 1.0 - 2.0 * s, "illposed: vartheta outside (0, 1-2s)");
  require(rho > 0.0, "illposed: rho must be positive");
  long long grid_factor = inum(cfg, "grid_factor");
  double dt_target = fnum(cfg, "dt");

  std::vector<long long> Ks = inums(cfg, "K_values");
  std::vector<double> initial, closed_sep, direct_sep, nonlinear_sep;
  std::vector<std::string> rows;
  double worst_closed_rel = 0.0, worst_product_rel = 0.0, max_bracket = 0.0;
  double theta_report = 0.0;

  for (long long K : Ks) {
    require(K >= 1, "illposed: K must be >= 1");
    TorusGrid grid = TorusGrid::make(1.0, static_cast<int>(grid_factor * K));
    double amp = rho * std::pow(static_cast<double>(K), -s);
    double ck = std::sqrt(1.0 + kPi * std::pow(static_cast<double>(K), 2.0 * s - 1.0 + vartheta));

    auto two_mode = [&](double a) {
      std::vector<Complex> c(static_cast<std::size_t>(grid.coeff_count()), Complex{0.0, 0.0});
      c[static_cast<std::size_t>(K + grid.max_index)] = Complex{0.0, -a};
      c[static_cast<std::size_t>(-K + grid.max_index)] = Complex{0.0, a};
      return SpectralField::from_coeffs(grid, std::move(c), true);
    };
    SpectralField v1 = two_mode(amp);        // K^{-s} * (rho/pi) sin(Kx)
    SpectralField v2 = two_mode(amp * ck);   // amplified twin

    std::vector<Complex> dc(static_cast<std::size_t>(grid.coeff_count()), Complex{0.0, 0.0});
    for (int m = -grid.max_index; m <= grid.max_index; ++m)
      dc[static_cast<std::size_t>(m + grid.max_index)] = v1.coeff(m) - v2.coeff(m);
    initial.push_back(sobolev_norm(SpectralField::from_coeffs(grid, std::move(dc), true), s));

    double t_k = std::pow(static_cast<double>(K), -vartheta);
    long long steps = std::max<long long>(1, std::llround(t_k / dt_target));
    double dt = t_k / static_cast<double>(steps);

    // data-renormalized phases of each family; their difference drives the
    // closed-form separation
    std::map<long long, double> mod1{{K, amp * amp}, {-K, amp * amp}};
    std::map<long long, double> mod2{{K, amp * amp * ck * ck}, {-K, amp * amp * ck * ck}};
    PhaseSymbol p1 = PhaseSymbol::data_corrected(params, 1.0, l2_norm_sq(v1), mod1);
    PhaseSymbol p2 = PhaseSymbol::data_corrected(params, 1.0, l2_norm_sq(v2), mod2);
    double theta = t_k * (p2.phase(K) - p1.phase(K));
    theta_report = theta;

    double pref = std::pow(1.0 + static_cast<double>(K) * static_cast<double>(K), s) * amp * amp /
                  (2.0 * kPi);
    auto sq = [](Complex z) { return std::norm(z); };
    double bracket = sq(1.0 - ck * std::polar(1.0, theta)) + sq(1.0 - ck * std::polar(1.0, -theta));
    double sep_c = std::sqrt(pref * bracket);
    closed_sep.push_back(sep_c);
    max_bracket = std::max(max_bracket, bracket);

    // independent route: exact mode-wise free flow of each corrected symbol
    // over the whole band, Sobolev norm of the difference.  The common factor
    // exp(i t p1(m)) is unimodular and dropped before exponentiating: t*p(m)
    // is ~1e9 radians at the top mode, and rounding that product would smear
    // the tiny phase difference we are measuring; t*(p2-p1) is O(1e-3).
    std::vector<Complex> dl(static_cast<std::size_t>(grid.coeff_count()), Complex{0.0, 0.0});
    for (int m = -grid.max_index; m <= grid.max_index; ++m) {
      Complex twist = std::polar(1.0, t_k * (p2.phase(m) - p1.phase(m)));
      dl[static_cast<std::size_t>(m + grid.max_index)] = v1.coeff(m) - twist * v2.coeff(m);
    }
    double sep_d = sobolev_norm(SpectralField::from_coeffs(grid, std::move(dl), true), s);
    direct_sep.push_back(sep_d);
    worst_closed_rel = std::max(worst_closed_rel, std::abs(sep_d - sep_c) / sep_c);

    // full nonlinear separation at t_K
    IntegratorConfig icfg{dt, t_k, static_cast<int>(steps), static_cast<int>(steps)};
    Trajectory t1 = evolve(State{v1, 0.0}, EvolutionForm::make(EvolutionKind::Full, params, v1),
                           icfg);
    Trajectory t2 = evolve(State{v2, 0.0}, EvolutionForm::make(EvolutionKind::Full, params, v2),
                           icfg);
    std::vector<Complex> dn(static_cast<std::size_t>(grid.coeff_count()), Complex{0.0, 0.0});
    const SpectralField& f1 = t1.fields.back();
    const SpectralField& f2 = t2.fields.back();
    for (int m = -grid.max_index; m <= grid.max_index; ++m)
      dn[static_cast<std::size_t>(m + grid.max_index)] = f1.coeff(m) - f2.coeff(m);
    double sep_n = sobolev_norm(SpectralField::from_coeffs(grid, std::move(dn), true), s);
    nonlinear_sep.push_back(sep_n);

    // t_K * K * |c(K)|^2 = rho^2 K^{1-2s-vartheta}, an exact bookkeeping identity
    double product = t_k * static_cast<double>(K) * amp * amp;
    double product_expected =
        rho * rho * std::pow(static_cast<double>(K), 1.0 - 2.0 * s - vartheta);
    worst_product_rel =
        std::max(worst_product_rel, std::abs(product / product_expected - 1.0));

    double phase_component = std::sqrt(pref * 2.0 * ck) * std::abs(theta);
    rows.push_back(std::to_string(K) + "," + fmt17(t_k) + "," + fmt17(dt) + "," +
                   fmt17(initial.back()) + "," + fmt17(theta) + "," + fmt17(sep_c) + "," +
                   fmt17(sep_d) + "," + fmt17(sep_n) + "," + fmt17(phase_component) + "," +
                   fmt17(bracket));
  }

  write_csv(out / "illposed.csv",
            "K,t_K,dt,initial_distance,theta,closed_linear_separation,"
            "direct_linear_separation,nonlinear_separation,phase_component,bracket",
            rows);
  man.artifact("illposed.csv");

  bool decreasing = true;
  for (std::size_t i = 1; i < initial.size(); ++i)
    decreasing = decreasing && (initial[i] < initial[i - 1]);

  double min_nl = *std::min_element(nonlinear_sep.begin(), nonlinear_sep.end());
  double guard = fnum(cfg, "decay_guard_factor");
  bool no_decay = nonlinear_sep.back() >= guard * nonlinear_sep.front();

  man.criterion("initial_distance_decreasing", decreasing,
                Json{{"values", initial}});
  man.criterion("closed_form_matches_direct", worst_closed_rel <= fnum(cfg, "closed_form_tol"),
                Json{{"max_rel_diff", worst_closed_rel},
                     {"tolerance", fnum(cfg, "closed_form_tol")}});
  man.criterion("nonlinear_separation",
                min_nl >= fnum(cfg, "separation_threshold") && no_decay,
                Json{{"min", min_nl},
                     {"threshold", fnum(cfg, "separation_threshold")},
                     {"last_over_first", nonlinear_sep.back() / nonlinear_sep.front()},
                     {"decay_guard_factor", guard}});
  man.criterion("product_identity", worst_product_rel <= fnum(cfg, "product_tol"),
                Json{{"max_rel_err", worst_product_rel},
                     {"tolerance", fnum(cfg, "product_tol")}});

  // The two-mode separation bracket never reaches the reference constant under
  // this toolkit's phase normalization; the measured value is reported instead
  // of being forced to match.
  man.reports["separation_bracket"] = Json{
      {"max_value", max_bracket},
      {"reference_constant", fnum(cfg, "reference_constant")},
      {"reference_attained", max_bracket >= fnum(cfg, "reference_constant")},
      {"theta", theta_report},
      {"note", "bracket = |1 - c_K e^{i theta}|^2 + |1 - c_K e^{-i theta}|^2 evaluated with "
               "this toolkit's corrected-phase difference; the reference constant assumes a "
               "different phase normalization and is reported, not enforced"}};
}

// ---------------------------------------------------------------------------
// strichartz

void run_strichartz(const Json& cfg, const fs::path& out, ManifestBuilder& man) {
  double rho = fnum(cfg, "rho");
  double rho_max = fnum(cfg, "rho_max");
  require(rho <= rho_max, "strichartz: rho exceeds the smallness cap rho_max");

  StrichartzConfig sc;
  sc.params = params_from(cfg);
  sc.lambdas = fnums(cfg, "lambda_values");
  sc.band = fnum(cfg, "band");
  sc.harmonics = static_cast<int>(inum(cfg, "harmonics"));
  sc.omega0 = fnum(cfg, "omega0");
  sc.rho = rho;
  sc.window_inner = fnum(cfg, "window_inner");
  sc.dt = fnum(cfg, "dt");
  sc.ensemble = static_cast<int>(inum(cfg, "ensemble"));
  sc.b = fnum(cfg, "b");
  sc.seed = static_cast<std::uint64_t>(inum(cfg, "seed"));
  man.rng = CounterRng(sc.seed).description();

  StrichartzResult res = strichartz_ratio_study(sc);

  write_csv(out / "ratios.csv", "lambda,field,l4,xsb,ratio", res.csv_rows);
  man.artifact("ratios.csv");
  write_text_atomic(out / "strichartz.json", strichartz_result_json(res) + "\n");
  man.artifact("strichartz.json");

  Json per = Json::array();
  for (const StrichartzLambdaStats& st : res.per_lambda)
    per.push_back(Json{{"lambda", st.lambda},
                       {"max_ratio", st.max_ratio},
                       {"mean_ratio", st.mean_ratio}});
  man.reports["per_lambda"] = per;

  man.criterion("smallness_enforced", true, Json{{"rho", rho}, {"rho_max", rho_max}});
  man.criterion("slope_nonpositive_within_band", res.nonpositive_within_band,
                Json{{"slope", res.slope}, {"slope_stderr", res.slope_stderr}});
}

// ---------------------------------------------------------------------------
// multiplier_scan

void run_multiplier_scan(const Json& cfg, const fs::path& out, ManifestBuilder& man) {
  double s = fnum(cfg, "s");
  double b = fnum(cfg, "b");
  double delta = fnum(cfg, "delta");
  long long m_abs_max = inum(cfg, "m_abs_max");

  Json all = Json::array();
  for (double lambda : fnums(cfg, "lambda_values")) {
    for (CaseRegion r : {CaseRegion::I, CaseRegion::II, CaseRegion::III, CaseRegion::IV,
                         CaseRegion::V}) {
      CaseBoundReport rep = case_bound_check(r, s, b, delta, lambda, m_abs_max);
      all.push_back(Json::parse(case_bound_report_json(rep)));
      std::ostringstream name;
      name << "case_" << region_name(r) << "_lambda_" << lambda;
      man.criterion(name.str(), !rep.violation && rep.window_ok,
                    Json{{"max_ratio", rep.max_ratio},
                         {"count", rep.count},
                         {"empty", rep.empty},
                         {"window_ok", rep.window_ok}});
    }
  }
  write_text_atomic(out / "multiplier_scan.json", all.dump(2) + "\n");
  man.artifact("multiplier_scan.json");
}

// ---------------------------------------------------------------------------
// resonance_audit

void run_resonance_audit(const Json& cfg, const fs::path& out, ManifestBuilder& man) {
  long long box = inum(cfg, "box");
  std::vector<long long> betas = inums(cfg, "beta_values");
  std::vector<long long> lambdas = inums(cfg, "lambda_values");
  std::vector<double> gammas = fnums(cfg, "gamma_values");
  int mu = static_cast<int>(inum(cfg, "mu"));
  double audit_mass = fnum(cfg, "audit_mass");

  // (a) factored vs direct cubic resonance, exact integers.  The first-order
  // coefficient (gamma plus any mass correction) multiplies m - m1 - m2 - m3
  // and cancels identically on conservative triples, so the exact routes need
  // only beta; the gamma values enter through the floating-point route below.
  long long checked = 0, mismatches = 0;
  for (PhaseKind kind : {PhaseKind::Bare, PhaseKind::MassCorrected}) {
    for (long long beta : betas) {
      for (long long lambda : lambdas) {
        for (long long m1 = -box; m1 <= box; ++m1)
          for (long long m2 = -box; m2 <= box; ++m2)
            for (long long m3 = -box; m3 <= box; ++m3) {
              FrequencyTriple t{m1, m2, m3, static_cast<double>(lambda)};
              ++checked;
              if (exact::two_lambda5_H_direct(kind, beta, lambda, t) !=
                  exact::two_lambda5_H_factored(kind, beta, lambda, t))
                ++mismatches;
            }
      }
    }
  }
  man.criterion("factorization_exact", mismatches == 0,
                Json{{"triples_checked", checked}, {"mismatches", mismatches}});

  // (b) the same identity through the floating-point symbols (which carry the
  // gamma and mass terms); resonance_H enforces direct/factored agreement
  // internally, so surviving the sweep is the check.
  long long float_checked = 0;
  for (long long beta : betas) {
    for (double gamma : gammas) {
      for (long long lambda : lambdas) {
        DispersionParams p;
        p.beta = static_cast<double>(beta);
        p.gamma = gamma;
        p.mu = mu;
        PhaseSymbol bare = PhaseSymbol::bare(p, static_cast<double>(lambda));
        PhaseSymbol corrected =
            PhaseSymbol::mass_corrected(p, static_cast<double>(lambda), audit_mass);
        for (long long m1 = -box; m1 <= box; ++m1)
          for (long long m2 = -box; m2 <= box; ++m2)
            for (long long m3 = -box; m3 <= box; ++m3) {
              FrequencyTriple t{m1, m2, m3, static_cast<double>(lambda)};
              if (!t.nonresonant()) continue;
              (void)resonance_H(bare, t);
              (void)resonance_H(corrected, t);
              ++float_checked;
            }
      }
    }
  }
  man.criterion("factorization_float_consistent", true,
                Json{{"triples_checked", float_checked}});

  // (c) the degenerate quintic family: outer (m2, m3, m) = (-N-a-b, N+b, N)
  // with pivot N+a expanded into (N+a+b, -N-b, N); exactly zero for every
  // admissible (N, a, b) by oddness of the symbol.
  long long family_checked = 0, family_nonzero = 0;
  long long n_max = inum(cfg, "family_N_max");
  long long ab = inum(cfg, "family_ab_max");
  for (PhaseKind kind : {PhaseKind::Bare, PhaseKind::MassCorrected}) {
    for (long long beta : betas) {
      for (long long lambda : lambdas) {
        for (long long N = 1; N <= n_max; ++N)
          for (long long a = -ab; a <= ab; ++a)
            for (long long b = -ab; b <= ab; ++b) {
              if (a == 0 || b == 0 || a + b == 0) continue;
              FrequencyTriple outer{-N - a - b, N + b, N, static_cast<double>(lambda)};
              FrequencyTriple inner{N + a + b, -N - b, N, static_cast<double>(lambda)};
              ++family_checked;
              if (exact::two_lambda5_quintic(kind, beta, lambda, outer, inner) != 0)
                ++family_nonzero;
            }
      }
    }
  }
  man.criterion("quintic_family_zero", family_nonzero == 0,
                Json{{"family_checked", family_checked}, {"nonzero", family_nonzero}});

  Json summary{{"box", box},
               {"triples_checked", checked},
               {"mismatches", mismatches},
               {"float_triples_checked", float_checked},
               {"family_checked", family_checked},
               {"family_nonzero", family_nonzero}};
  write_text_atomic(out / "resonance_audit.json", summary.dump(2) + "\n");
  man.artifact("resonance_audit.json");
}

}  // namespace

// ---------------------------------------------------------------------------

bool is_known_experiment(const std::string& experiment) {
  static const char* names[] = {"conservation",   "scaling",    "smoothing", "illposed",
                                "strichartz",     "multiplier_scan", "resonance_audit"};
  for (const char* n : names)
    if (experiment == n) return true;
  return false;
}

std::string known_experiments() {
  return "conservation, scaling, smoothing, illposed, strichartz, multiplier_scan, "
         "resonance_audit";
}

std::string default_config_json(const std::string& experiment) {
  return defaults_for(experiment).dump(2) + "\n";
}

int run_experiment(const std::string& experiment, const RunOptions& opts) {
  require(is_known_experiment(experiment),
          "unknown experiment '" + experiment + "' (expected one of: " + known_experiments() +
              ")");
  Json cfg = materialize_config(experiment, opts);
  fs::path out(opts.out_dir);
  fs::create_directories(out);

  ManifestBuilder man;
  man.experiment = experiment;
  man.config = cfg;

  auto t0 = std::chrono::steady_clock::now();
  if (experiment == "conservation") {
    run_conservation(cfg, out, man);
  } else if (experiment == "scaling") {
    run_scaling(cfg, out, man);
  } else if (experiment == "smoothing") {
    run_smoothing(cfg, out, man);
  } else if (experiment == "illposed") {
    run_illposed(cfg, out, man);
  } else if (experiment == "strichartz") {
    run_strichartz(cfg, out, man);
  } else if (experiment == "multiplier_scan") {
    run_multiplier_scan(cfg, out, man);
  } else {
    run_resonance_audit(cfg, out, man);
  }
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  man.write(out, opts.threads_requested, wall);
  return man.all_pass ? 0 : 2;
}

}  // namespace kawahara
