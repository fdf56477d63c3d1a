#include "kawahara/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "kawahara/norms.hpp"
#include "kawahara/transforms.hpp"

namespace kawahara {

namespace {

std::map<long long, double> moduli_map(const SpectralField& v0) {
  std::map<long long, double> m;
  for (int k = -v0.max_index(); k <= v0.max_index(); ++k)
    m[k] = std::norm(v0.coeff(k));
  return m;
}

}  // namespace

EvolutionForm EvolutionForm::make(EvolutionKind kind, const DispersionParams& params,
                                  const SpectralField& v0, double eps) {
  params.validate();
  EvolutionForm f;
  f.kind_ = kind;
  f.params_ = params;
  f.grid_ = v0.grid();
  f.eps_ = eps;
  f.v0_mass_ = l2_norm_sq(v0);
  f.v0_moduli_sq_.resize(static_cast<std::size_t>(f.grid_.coeff_count()));
  for (int m = -f.grid_.max_index; m <= f.grid_.max_index; ++m)
    f.v0_moduli_sq_[static_cast<std::size_t>(m + f.grid_.max_index)] = std::norm(v0.coeff(m));
  PhaseSymbol sym = [&] {
    switch (kind) {
      case EvolutionKind::Full:
        return PhaseSymbol::bare(params, f.grid_.lambda);
      case EvolutionKind::WickOrdered:
        return PhaseSymbol::mass_corrected(params, f.grid_.lambda, f.v0_mass_);
      case EvolutionKind::DataRenormalized:
      default:
        return PhaseSymbol::data_corrected(params, f.grid_.lambda, f.v0_mass_,
                                           moduli_map(v0));
    }
  }();
  f.phases_.resize(static_cast<std::size_t>(f.grid_.coeff_count()));
  for (int m = -f.grid_.max_index; m <= f.grid_.max_index; ++m)
    f.phases_[static_cast<std::size_t>(m + f.grid_.max_index)] = sym.phase(m);
  return f;
}

PhaseSymbol EvolutionForm::symbol() const {
  switch (kind_) {
    case EvolutionKind::Full:
      return PhaseSymbol::bare(params_, grid_.lambda);
    case EvolutionKind::WickOrdered:
      return PhaseSymbol::mass_corrected(params_, grid_.lambda, v0_mass_);
    case EvolutionKind::DataRenormalized:
    default: {
      std::map<long long, double> m;
      for (int k = -grid_.max_index; k <= grid_.max_index; ++k)
        m[k] = v0_moduli_sq_[static_cast<std::size_t>(k + grid_.max_index)];
      return PhaseSymbol::data_corrected(params_, grid_.lambda, v0_mass_, std::move(m));
    }
  }
}

SpectralField nonlinearity_full(const SpectralField& u, const DispersionParams& p) {
  p.validate();
  const TorusGrid& g = u.grid();
  std::vector<Complex> cube = dealiased_cube(u);
  // (mu i/3) * n * (v^3)-hat(m): the two 1/(2 pi lambda) convolution weights
  // are already carried by the cube coefficients in this convention.
  SpectralField out = SpectralField::zeros(g, u.realness());
  Complex imu{0.0, p.mu / 3.0};
  for (int m = -g.max_index; m <= g.max_index; ++m)
    out.set_coeff(m, imu * g.wavenumber(m) * cube[static_cast<std::size_t>(m + g.max_index)]);
  return out;
}

ResonantSplit split_resonant(const SpectralField& u, const DispersionParams& p) {
  const TorusGrid& g = u.grid();
  SpectralField full = nonlinearity_full(u, p);
  double mass = l2_norm_sq(u);  // (1/(2 pi lambda)) sum |c|^2
  double c2 = kTwoPi * g.lambda * kTwoPi * g.lambda;
  ResonantSplit sp{SpectralField::zeros(g, u.realness()), SpectralField::zeros(g, u.realness()),
                   SpectralField::zeros(g, u.realness())};
  for (int m = -g.max_index; m <= g.max_index; ++m) {
    double n = g.wavenumber(m);
    Complex c = u.coeff(m);
    Complex r1 = Complex{0.0, -p.mu / c2} * n * std::norm(c) * c;
    Complex r2 = Complex{0.0, p.mu / (kTwoPi * g.lambda)} * n * mass * c;
    sp.r1.set_coeff(m, r1);
    sp.r2.set_coeff(m, r2);
    sp.nr.set_coeff(m, full.coeff(m) - r1 - r2);
  }
  return sp;
}

SpectralField rhs_nonlinear(const State& s, const EvolutionForm& form) {
  const SpectralField& u = s.field;
  require(u.grid() == form.grid(), "rhs_nonlinear: state grid does not match the form");
  const TorusGrid& g = u.grid();
  SpectralField out = SpectralField::zeros(g, u.realness());
  switch (form.kind()) {
    case EvolutionKind::Full: {
      SpectralField n = nonlinearity_full(u, form.params());
      for (int m = -g.max_index; m <= g.max_index; ++m)
        out.set_coeff(m, form.eps() * n.coeff(m));
      break;
    }
    case EvolutionKind::WickOrdered: {
      // R1 + NR = full - R2.
      SpectralField full = nonlinearity_full(u, form.params());
      double mass = l2_norm_sq(u);
      for (int m = -g.max_index; m <= g.max_index; ++m) {
        double n = g.wavenumber(m);
        Complex r2 =
            Complex{0.0, form.params().mu / (kTwoPi * g.lambda)} * n * mass * u.coeff(m);
        out.set_coeff(m, form.eps() * (full.coeff(m) - r2));
      }
      break;
    }
    case EvolutionKind::DataRenormalized: {
      // reduced + NR = full - R2 - (R1 part carried by the initial moduli):
      // reduced(m) = -(mu i/(2 pi lambda)^2) n (|c|^2 - |c0|^2) c, so
      // reduced - R1 = +(mu i/(2 pi lambda)^2) n |c0|^2 c.
      SpectralField full = nonlinearity_full(u, form.params());
      double mass = l2_norm_sq(u);
      double c2 = kTwoPi * g.lambda * kTwoPi * g.lambda;
      for (int m = -g.max_index; m <= g.max_index; ++m) {
        double n = g.wavenumber(m);
        Complex c = u.coeff(m);
        Complex r2 = Complex{0.0, form.params().mu / (kTwoPi * g.lambda)} * n * mass * c;
        Complex data = Complex{0.0, form.params().mu / c2} * n * form.v0_modulus_sq(m) * c;
        out.set_coeff(m, form.eps() * (full.coeff(m) - r2 + data));
      }
      break;
    }
  }
  return out;
}

SpectralField rhs(const State& s, const EvolutionForm& form) {
  const TorusGrid& g = form.grid();
  SpectralField out = rhs_nonlinear(s, form);
  for (int m = -g.max_index; m <= g.max_index; ++m)
    out.set_coeff(m, out.coeff(m) + Complex{0.0, form.phase(m)} * s.field.coeff(m));
  return out;
}

State gauge_transform(const State& s, double v0_mass, int mu, bool inverse) {
  double theta = mu * s.t * v0_mass * (inverse ? -1.0 : 1.0);
  Complex factor{std::cos(theta), std::sin(theta)};
  const TorusGrid& g = s.field.grid();
  SpectralField out = SpectralField::zeros(g, s.field.realness() && factor.imag() == 0.0);
  for (int m = -g.max_index; m <= g.max_index; ++m)
    out.set_coeff(m, factor * s.field.coeff(m));
  return State{std::move(out), s.t};
}

double conserved_E(const SpectralField& u) { return u.coeff(0).real(); }

double conserved_M(const SpectralField& u) { return 0.5 * l2_norm_sq(u); }

double conserved_H(const SpectralField& u, const DispersionParams& p) {
  require(u.realness(), "conserved_H: field must be real");
  const TorusGrid& g = u.grid();
  double quad = 0.0;
  for (int m = -g.max_index; m <= g.max_index; ++m) {
    double n = g.wavenumber(m);
    double a = std::norm(u.coeff(m));
    quad += (n * n * n * n + p.beta * n * n - p.gamma) * a;
  }
  quad *= 0.5 / g.circumference();
  return quad + p.mu / 12.0 * quartic_integral(u);
}

SpectralField hamiltonian_gradient(const SpectralField& u, const DispersionParams& p) {
  const TorusGrid& g = u.grid();
  std::vector<Complex> cube = dealiased_cube(u);
  SpectralField out = SpectralField::zeros(g, u.realness());
  for (int m = -g.max_index; m <= g.max_index; ++m) {
    double n = g.wavenumber(m);
    Complex v =
        (n * n * n * n + p.beta * n * n - p.gamma) * u.coeff(m) +
        (p.mu / 3.0) * cube[static_cast<std::size_t>(m + g.max_index)];
    out.set_coeff(m, v);
  }
  return out;
}

double symplectic_form(const SpectralField& v, const SpectralField& w) {
  require(v.grid() == w.grid(), "symplectic_form: fields must share a grid");
  double scale = std::max({1.0, v.max_abs(), w.max_abs()});
  require(std::abs(v.coeff(0)) <= 1e-12 * scale && std::abs(w.coeff(0)) <= 1e-12 * scale,
          "symplectic_form: fields must be mean-free");
  const TorusGrid& g = v.grid();
  Complex acc{0.0, 0.0};
  for (int m = -g.max_index; m <= g.max_index; ++m) {
    if (m == 0) continue;
    Complex anti = w.coeff(m) / Complex{0.0, g.wavenumber(m)};  // (d^{-1} w)-hat
    acc += v.coeff(m) * std::conj(anti);
  }
  return acc.real() / g.circumference();
}

}  // namespace kawahara
