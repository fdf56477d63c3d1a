#pragma once

#include <string>

#include "kawahara/resonance.hpp"

namespace kawahara {

// Trilinear multiplier
//   M = |n| <n>^s <n1>^{-s} <n2>^{-s} <n3>^{-s}
//       / ( |n1+n2| |n2+n3| |n3+n1| n_*^2 )^{1-b-2*delta},
// n_* = max(|n1|,|n2|,|n3|,|n|), all frequencies physical (mj/lambda).
// Precondition: nonresonant triple.  A zero exponent makes a factor 1.
double multiplier_M(const FrequencyTriple& t, double s, double b, double delta);

// The five frequency-separation regions.  Membership is decided on the sorted
// input magnitudes a1 >= a2 >= a3 and the output |n| against n_*:
// "comparable" means 2x >= n_*, "small" means 4x <= n_* (two dyadic levels).
//
//            a1  a2  a3  |n|
//   I         C   C   C   C     (everything at the top scale)
//   II        C   C   S   C     (one low input, high output)
//   III       C   C   C   S     (three high inputs, low output)
//   IV        C   S   S   C     (two low inputs, high output)
//   V         C   C   S   S     (two high inputs, low input and output)
//
// Triples in the factor-(2,4) gap match no region; regions are disjoint.
enum class CaseRegion { I, II, III, IV, V };

const char* region_name(CaseRegion r);
bool in_region(const FrequencyTriple& t, CaseRegion r);

// Region bound with constant pinned to 1, evaluated at the designated pair sum
// (region I: the smallest pair sum; II: low+middle; III/V: the two largest;
// IV: the two lows).  E1 = 1-b-2*delta:
//   I:   lambda^{E1} / P^{3-4b-8*delta+2s}
//   II:  P^{-(5*E1-1+s)}           (s<0: exponent 5*E1-1+2s)
//   III: P^{-(5*E1-1+2s)}          (s<0: 5*E1-1+3s)
//   IV:  P^{-E1} n_*^{-(4*E1-1)}   (s<0: n_* exponent 4*E1-1+2s)
//   V:   P^{-E1} n_*^{-(4*E1-1+s)} (s<0: 4*E1-1+3s)
double region_bound(const FrequencyTriple& t, CaseRegion r, double s, double b, double delta);

// Admissible (b, delta) window per region: delta in (0, delta_max] and
// b in [1/2, b_hi) with the region's per-s exponent budget.
struct CaseWindow {
  double delta_max = 0.0;
  double b_lo = 0.5;
  double b_hi = 0.0;
};
CaseWindow admissible_window(CaseRegion r, double s, double delta);

struct CaseBoundReport {
  CaseRegion region = CaseRegion::I;
  double s = 0.0, b = 0.0, delta = 0.0, lambda = 1.0;
  long long m_abs_max = 0;
  long long count = 0;       // triples matching the region (nonresonant, n_* > 1)
  bool empty = true;
  double max_ratio = 0.0;    // max multiplier_M / region_bound
  FrequencyTriple argmax{0, 0, 0, 1.0};
  bool violation = false;    // max_ratio > 1 + 1e-9
  bool window_ok = false;
  CaseWindow window;
  double sigma_info = 0.0;   // informational scaling power 3 - 5b - 10*delta + 2s
};

// Scan every integer triple with max(|m1|,|m2|,|m3|,|m1+m2+m3|) <= m_abs_max,
// physical n_* in (1, m_abs_max/lambda], matching the region.  An empty region
// is reported, not fatal.
CaseBoundReport case_bound_check(CaseRegion r, double s, double b, double delta,
                                 double lambda, long long m_abs_max);

std::string case_bound_report_json(const CaseBoundReport& rep);

}  // namespace kawahara
