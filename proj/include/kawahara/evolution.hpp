#pragma once

#include <vector>

#include "kawahara/dispersion.hpp"
#include "kawahara/spectral_field.hpp"

namespace kawahara {

// Which right-hand side drives the evolution.  All three generate equivalent
// flows connected by explicit mode-wise phase maps; they differ in how much of
// the resonant cubic interaction is absorbed into the linear phase:
//
//   Full:             d/dt c = i p_bare(n) c + N(c)              (complete cubic)
//   WickOrdered:      d/dt c = i p_mass(n) c + R1(c) + NR(c)     (pair sum absorbed)
//   DataRenormalized: d/dt c = i p_data(n) c + reduced(c) + NR(c)
//
// with N = R1 + R2 + NR the exact resonant/nonresonant splitting and
// reduced(m) = -(mu i/(2 pi lambda)^2) n (|c(m)|^2 - |c0(m)|^2) c(m).
enum class EvolutionKind { Full, WickOrdered, DataRenormalized };

struct State {
  SpectralField field;
  double t = 0.0;
};

// Frozen description of one evolution problem: parameters, grid, the initial
// data's conserved mass and per-mode moduli (consumed by the corrected phases
// and the reduced resonant term), and a test-only scale eps multiplying the
// whole nonlinearity (eps = 1 in production, eps = 0 isolates the free flow).
class EvolutionForm {
 public:
  static EvolutionForm make(EvolutionKind kind, const DispersionParams& params,
                            const SpectralField& v0, double eps = 1.0);

  EvolutionKind kind() const { return kind_; }
  const DispersionParams& params() const { return params_; }
  const TorusGrid& grid() const { return grid_; }
  double eps() const { return eps_; }
  double v0_mass() const { return v0_mass_; }
  double v0_modulus_sq(int m) const {
    return v0_moduli_sq_[static_cast<std::size_t>(m + grid_.max_index)];
  }

  // The linear phase this form integrates exactly: Bare for Full,
  // MassCorrected for WickOrdered, DataCorrected for DataRenormalized.
  PhaseSymbol symbol() const;
  double phase(int m) const { return phases_[static_cast<std::size_t>(m + grid_.max_index)]; }

 private:
  EvolutionKind kind_ = EvolutionKind::Full;
  DispersionParams params_;
  TorusGrid grid_;
  double eps_ = 1.0;
  double v0_mass_ = 0.0;
  std::vector<double> v0_moduli_sq_;
  std::vector<double> phases_;
};

// Complete cubic nonlinearity N(m) = (mu i / (3 (2 pi lambda)^2)) (m/lambda)
// sum_{m1+m2+m3=m} c(m1) c(m2) c(m3), truncated to the retained band and
// computed alias-free by the pointwise-cube route.
SpectralField nonlinearity_full(const SpectralField& u, const DispersionParams& p);

// Exact splitting of nonlinearity_full:
//   R1(m) = -(mu i/(2 pi lambda)^2) (m/lambda) |c(m)|^2 c(m)
//   R2(m) = +(mu i/(2 pi lambda))   (m/lambda) ((1/(2 pi lambda)) sum |c|^2) c(m)
//   NR    = full - R1 - R2   (the (m1+m2)(m2+m3)(m3+m1) != 0 triples)
struct ResonantSplit {
  SpectralField r1, r2, nr;
};
ResonantSplit split_resonant(const SpectralField& u, const DispersionParams& p);

// Full right-hand side of the given form at the given state (includes the
// linear i*phase term and the form's eps).
SpectralField rhs(const State& s, const EvolutionForm& form);

// Nonlinear part only (what the integrating-factor integrator advances).
SpectralField rhs_nonlinear(const State& s, const EvolutionForm& form);

// Multiply the field by exp(i mu t v0_mass) (inverse: the conjugate factor).
// Bookkeeping map between ordering conventions; composing forward and inverse
// is the identity.
State gauge_transform(const State& s, double v0_mass, int mu, bool inverse = false);

// Conserved functionals of the flow:
//   E = c(0)                      (mean)
//   M = (1/2) integral v^2
//   H = (1/2)||d2 v||^2 + (beta/2)||d1 v||^2 - (gamma/2)||v||^2
//       + (mu/12) integral v^4
double conserved_E(const SpectralField& u);
double conserved_M(const SpectralField& u);
double conserved_H(const SpectralField& u, const DispersionParams& p);

// L^2 gradient of H: d4 v - beta d2 v - gamma v + (mu/3) v^3.  The flow is
// d/dt v = d/dx grad H, so i*(m/lambda)*gradH-hat equals the Full rhs.
SpectralField hamiltonian_gradient(const SpectralField& u, const DispersionParams& p);

// Symplectic pairing integral of v * d^{-1} w; both fields must be mean-free
// (c(0) = 0) or a ContractError is thrown.  Antisymmetric, bilinear.
double symplectic_form(const SpectralField& v, const SpectralField& w);

}  // namespace kawahara
