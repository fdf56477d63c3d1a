#pragma once

#include <string>
#include <vector>

#include "kawahara/evolution.hpp"

namespace kawahara {

struct IntegratorConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  int snapshot_stride = 1;           // record every k-th step (plus t = 0)
  int conservation_check_stride = 0; // 0: diagnose at snapshot cadence
};

struct DiagnosticsRow {
  double t = 0.0;
  double E = 0.0;
  double M = 0.0;
  double H = 0.0;
  double smoothing = 0.0;  // (1/lambda^2) sup_m |m/lambda| | |c(t,m)|^2 - |c(0,m)|^2 |
};

struct Trajectory {
  std::vector<double> times;           // strictly increasing, uniform spacing
  std::vector<SpectralField> fields;
  std::vector<DiagnosticsRow> diagnostics;
  const SpectralField& initial() const { return fields.front(); }
};

// One integrating-factor RK4 (Lawson) step.  The linear phase is applied as an
// exact complex rotation, so eps = 0 propagates the free flow to roundoff for
// any dt.  Works for dt of either sign.  Throws BlowUpError (carrying the last
// finite time) when a coefficient leaves [0, 1e12] or stops being finite.
State step(const State& s, double dt, const EvolutionForm& form);

// March from s0 to s0.t + t_end recording snapshots; t_end/dt must be within
// 1e-6 of an integer.  Diagnostics rows carry E, M, H and the smoothing
// functional against the run's own initial data.
Trajectory evolve(const State& s0, const EvolutionForm& form, const IntegratorConfig& cfg);

// Centered finite difference of the interaction-picture variable
// w(tau) = exp(-i (tau - t) p) c(tau) against the analytic identity
// dw/dtau|_{tau=t} = nonlinear rhs at c(t).  Returns the max-mode discrepancy;
// decays as O(dt_probe^2), and vanishes to roundoff when eps = 0.
double interaction_derivative_check(const State& s, const EvolutionForm& form,
                                    double dt_probe);

// Step-size heuristic: the nonlinear rotation is what RK4 must resolve, the
// stiff linear phase is integrated exactly, so the cap only tightens once the
// retained band outruns the torus (max |p| ~ (M/lambda)^5 enters the cross-form
// phase maps).
double default_dt(const TorusGrid& grid);

// Write snapshots (snap_000000.csv, ...) and diagnostics.csv ("t,E,M,H,
// smoothing", 17 significant digits) into dir.
void export_trajectory(const std::string& dir, const Trajectory& traj,
                       const EvolutionForm& form);

}  // namespace kawahara
