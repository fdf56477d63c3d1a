#pragma once

#include <map>
#include <utility>

#include "kawahara/common.hpp"

namespace kawahara {

struct DispersionParams {
  double beta = 0.0;  // >= 0
  double gamma = 0.0;
  int mu = 1;  // +1 or -1

  void validate() const {
    require(beta >= 0.0, "DispersionParams: beta must be >= 0");
    require(mu == 1 || mu == -1, "DispersionParams: mu must be +1 or -1");
  }
};

enum class PhaseKind { Bare, MassCorrected, DataCorrected };

// Linear evolution phase p(n) at n = m/lambda.  Three flavours:
//
//   Bare:           n^5 + beta n^3 - gamma n
//   MassCorrected:  n^5 + beta lambda^{-2} n^3 - (gamma + mu*mass/(2 pi lambda)) n
//   DataCorrected:  MassCorrected - mu n |c0(m)|^2 / (2 pi lambda)^2
//
// mass is the conserved quantity integral of v0^2; data_moduli maps retained
// index m to |c0(m)|^2, with missing entries read as zero.  All three phases
// are odd in m whenever the data moduli are even (real initial data).
class PhaseSymbol {
 public:
  static PhaseSymbol bare(const DispersionParams& p, double lambda) {
    return PhaseSymbol(PhaseKind::Bare, p, lambda, 0.0, {});
  }
  static PhaseSymbol mass_corrected(const DispersionParams& p, double lambda, double mass) {
    return PhaseSymbol(PhaseKind::MassCorrected, p, lambda, mass, {});
  }
  static PhaseSymbol data_corrected(const DispersionParams& p, double lambda, double mass,
                                    std::map<long long, double> data_moduli) {
    return PhaseSymbol(PhaseKind::DataCorrected, p, lambda, mass, std::move(data_moduli));
  }

  double phase(long long m) const {
    double n = static_cast<double>(m) / lambda_;
    double n2 = n * n;
    double value = n2 * n2 * n + cubic_coefficient() * n2 * n - linear_coefficient() * n;
    if (kind_ == PhaseKind::DataCorrected)
      value -= params_.mu * n * data_modulus(m) / (kTwoPi * lambda_ * kTwoPi * lambda_);
    return value;
  }

  // Coefficient of n^3: the Bare symbol keeps the raw beta, the corrected
  // symbols carry the rescaled beta/lambda^2.  The factored resonance form
  // uses exactly this coefficient.
  double cubic_coefficient() const {
    return kind_ == PhaseKind::Bare ? params_.beta : params_.beta / (lambda_ * lambda_);
  }

  double linear_coefficient() const {
    return kind_ == PhaseKind::Bare
               ? params_.gamma
               : params_.gamma + params_.mu * mass_ / (kTwoPi * lambda_);
  }

  double data_modulus(long long m) const {
    auto it = data_moduli_.find(m);
    return it == data_moduli_.end() ? 0.0 : it->second;
  }

  PhaseKind kind() const { return kind_; }
  const DispersionParams& params() const { return params_; }
  double lambda() const { return lambda_; }
  double mass() const { return mass_; }
  const std::map<long long, double>& data_moduli() const { return data_moduli_; }

 private:
  PhaseSymbol(PhaseKind kind, const DispersionParams& p, double lambda, double mass,
              std::map<long long, double> moduli)
      : kind_(kind), params_(p), lambda_(lambda), mass_(mass), data_moduli_(std::move(moduli)) {
    params_.validate();
    require(lambda_ >= 1.0, "PhaseSymbol: lambda must be >= 1");
    require(mass_ >= 0.0, "PhaseSymbol: mass must be >= 0");
    for (const auto& [m, v] : data_moduli_)
      require(v >= 0.0, "PhaseSymbol: data moduli must be nonnegative");
  }

  PhaseKind kind_;
  DispersionParams params_;
  double lambda_;
  double mass_;
  std::map<long long, double> data_moduli_;
};

}  // namespace kawahara
