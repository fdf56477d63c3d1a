#pragma once

#include <cstdint>

#include "kawahara/dispersion.hpp"
#include "kawahara/resonance.hpp"

namespace kawahara::exact {

using Int = __int128_t;

// Exact integer arithmetic for the resonance identities, valid for integer
// beta and lambda.  The gamma/mass terms are linear in n and cancel on any
// triple with m = m1+m2+m3, so they never appear here.  Working quantity is
// 2*lambda^5*H, which clears every denominator:
//
//   Bare:           2[(m^5 - sum mj^5) + beta*lambda^2 (m^3 - sum mj^3)]
//   MassCorrected:  2[(m^5 - sum mj^5) + beta          (m^3 - sum mj^3)]
//
// and the factored counterpart P * (5*Q + 6*beta*cf) with
//   P  = (m1+m2)(m2+m3)(m3+m1),
//   Q  = m1^2+m2^2+m3^2+m^2,
//   cf = lambda^2 for Bare, 1 for the corrected kinds.
Int two_lambda5_H_direct(PhaseKind kind, long long beta, long long lambda,
                         const FrequencyTriple& t);
Int two_lambda5_H_factored(PhaseKind kind, long long beta, long long lambda,
                           const FrequencyTriple& t);

// Exact quintic resonance (same clearing) for outer = (m2, m3, m) and inner
// = (m11, m12, m13); gamma/mass again cancel because the index sums match.
Int two_lambda5_quintic(PhaseKind kind, long long beta, long long lambda,
                        const FrequencyTriple& outer, const FrequencyTriple& inner);

}  // namespace kawahara::exact
