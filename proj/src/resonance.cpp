#include "kawahara/resonance.hpp"

#include <cmath>

#include "kawahara/exact_resonance.hpp"

namespace kawahara {

double resonance_H_factored(const PhaseSymbol& sym, const FrequencyTriple& t) {
  require(sym.kind() != PhaseKind::DataCorrected,
          "resonance_H_factored: data-corrected symbols have no factored form");
  double lam = sym.lambda();
  double n1 = t.m1 / lam, n2 = t.m2 / lam, n3 = t.m3 / lam;
  double n = n1 + n2 + n3;
  double pairs = (n1 + n2) * (n2 + n3) * (n3 + n1);
  double bracket = n1 * n1 + n2 * n2 + n3 * n3 + n * n + 1.2 * sym.cubic_coefficient();
  return 2.5 * pairs * bracket;
}

double resonance_H(const PhaseSymbol& sym, const FrequencyTriple& t) {
  double direct =
      sym.phase(t.m()) - sym.phase(t.m1) - sym.phase(t.m2) - sym.phase(t.m3);
  if (sym.kind() != PhaseKind::DataCorrected) {
    double factored = resonance_H_factored(sym, t);
    require(std::abs(direct - factored) <= 1e-9 * std::max(1.0, std::abs(direct)),
            "resonance_H: direct and factored evaluations disagree");
  }
  return direct;
}

double quintic_resonance(const PhaseSymbol& sym, const FrequencyTriple& outer,
                         const FrequencyTriple& inner) {
  // outer = (m2, m3, m) with m the final output index; inner replaces the
  // pivot m1 = m - m2 - m3.
  long long m2 = outer.m1, m3 = outer.m2, m = outer.m3;
  require(inner.m() == m - m2 - m3,
          "quintic_resonance: inner triple must sum to the outer pivot m - m2 - m3");
  return sym.phase(m) - sym.phase(m2) - sym.phase(m3) - sym.phase(inner.m1) -
         sym.phase(inner.m2) - sym.phase(inner.m3);
}

std::vector<FrequencyTriple> enumerate_nonresonant(long long m, long long m_abs_max,
                                                   double lambda) {
  require(m_abs_max >= 0, "enumerate_nonresonant: m_abs_max must be >= 0");
  std::vector<FrequencyTriple> out;
  for (long long m1 = -m_abs_max; m1 <= m_abs_max; ++m1)
    for (long long m2 = -m_abs_max; m2 <= m_abs_max; ++m2) {
      long long m3 = m - m1 - m2;
      if (m3 < -m_abs_max || m3 > m_abs_max) continue;
      FrequencyTriple t{m1, m2, m3, lambda};
      if (t.nonresonant()) out.push_back(t);
    }
  return out;
}

namespace exact {

namespace {

Int p5(long long v) {
  Int x = v;
  return x * x * x * x * x;
}

Int p3(long long v) {
  Int x = v;
  return x * x * x;
}

Int cubic_factor(PhaseKind kind, long long lambda) {
  require(kind != PhaseKind::DataCorrected,
          "exact resonance: data-corrected symbols are handled by the float path");
  return kind == PhaseKind::Bare ? static_cast<Int>(lambda) * lambda : Int{1};
}

}  // namespace

Int two_lambda5_H_direct(PhaseKind kind, long long beta, long long lambda,
                         const FrequencyTriple& t) {
  long long m = t.m();
  Int quintic = p5(m) - p5(t.m1) - p5(t.m2) - p5(t.m3);
  Int cubic = p3(m) - p3(t.m1) - p3(t.m2) - p3(t.m3);
  return 2 * (quintic + static_cast<Int>(beta) * cubic_factor(kind, lambda) * cubic);
}

Int two_lambda5_H_factored(PhaseKind kind, long long beta, long long lambda,
                           const FrequencyTriple& t) {
  long long m = t.m();
  Int P = static_cast<Int>(t.m1 + t.m2) * (t.m2 + t.m3) * (t.m3 + t.m1);
  Int Q = static_cast<Int>(t.m1) * t.m1 + static_cast<Int>(t.m2) * t.m2 +
          static_cast<Int>(t.m3) * t.m3 + static_cast<Int>(m) * m;
  return P * (5 * Q + 6 * static_cast<Int>(beta) * cubic_factor(kind, lambda));
}

Int two_lambda5_quintic(PhaseKind kind, long long beta, long long lambda,
                        const FrequencyTriple& outer, const FrequencyTriple& inner) {
  long long m2 = outer.m1, m3 = outer.m2, m = outer.m3;
  require(inner.m() == m - m2 - m3,
          "two_lambda5_quintic: inner triple must sum to the outer pivot");
  Int quintic = p5(m) - p5(m2) - p5(m3) - p5(inner.m1) - p5(inner.m2) - p5(inner.m3);
  Int cubic = p3(m) - p3(m2) - p3(m3) - p3(inner.m1) - p3(inner.m2) - p3(inner.m3);
  return 2 * (quintic + static_cast<Int>(beta) * cubic_factor(kind, lambda) * cubic);
}

}  // namespace exact

}  // namespace kawahara
