#pragma once

#include <vector>

#include "kawahara/dispersion.hpp"

namespace kawahara {

// Interaction triple (m1, m2, m3) of retained indices driving the output index
// m = m1+m2+m3; physical frequencies are mj/lambda.  The triple is nonresonant
// when (m1+m2)(m2+m3)(m3+m1) != 0.
struct FrequencyTriple {
  long long m1 = 0;
  long long m2 = 0;
  long long m3 = 0;
  double lambda = 1.0;

  long long m() const { return m1 + m2 + m3; }
  bool nonresonant() const {
    return (m1 + m2) != 0 && (m2 + m3) != 0 && (m3 + m1) != 0;
  }
};

// Cubic resonance function H = p(m1+m2+m3) - p(m1) - p(m2) - p(m3).
// For the Bare and MassCorrected kinds the closed factored form
//   (5/2) (n1+n2)(n2+n3)(n3+n1) (n1^2+n2^2+n3^2+n^2 + (6/5) c3)
// (c3 = the symbol's cubic coefficient) is evaluated as well and agreement to
// 1e-9 relative is enforced before the direct value is returned.
double resonance_H(const PhaseSymbol& sym, const FrequencyTriple& t);

// The factored form alone (Bare/MassCorrected only).
double resonance_H_factored(const PhaseSymbol& sym, const FrequencyTriple& t);

// Quintic resonance for a second-generation interaction: outer = (m2, m3, m)
// with m the final output index, inner = (m11, m12, m13) replacing the pivot
// m1 = m - m2 - m3.  Returns
//   p(m) - p(m2) - p(m3) - p(m11) - p(m12) - p(m13).
// Precondition: m11+m12+m13 = m - m2 - m3.
double quintic_resonance(const PhaseSymbol& sym, const FrequencyTriple& outer,
                         const FrequencyTriple& inner);

// All nonresonant triples with |mj| <= m_abs_max summing to m, in lexicographic
// order on (m1, m2, m3).
std::vector<FrequencyTriple> enumerate_nonresonant(long long m, long long m_abs_max,
                                                   double lambda);

}  // namespace kawahara
