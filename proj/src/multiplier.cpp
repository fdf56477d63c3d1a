#include "kawahara/multiplier.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <json.hpp>

namespace kawahara {

namespace {

double bracket(double x) { return std::sqrt(1.0 + x * x); }

struct SortedTriple {
  // Signed physical frequencies sorted by magnitude, c1 largest.
  double c1, c2, c3;
  double n;       // output frequency
  double n_star;  // max magnitude among inputs and output
};

SortedTriple sort_triple(const FrequencyTriple& t) {
  std::array<double, 3> v = {t.m1 / t.lambda, t.m2 / t.lambda, t.m3 / t.lambda};
  std::sort(v.begin(), v.end(),
            [](double a, double b) { return std::abs(a) > std::abs(b); });
  SortedTriple s{v[0], v[1], v[2], 0.0, 0.0};
  s.n = (t.m1 + t.m2 + t.m3) / t.lambda;
  s.n_star = std::max(std::abs(v[0]), std::abs(s.n));
  return s;
}

bool comparable(double x, double n_star) { return 2.0 * std::abs(x) >= n_star; }
bool small_vs(double x, double n_star) { return 4.0 * std::abs(x) <= n_star; }

}  // namespace

const char* region_name(CaseRegion r) {
  switch (r) {
    case CaseRegion::I: return "I";
    case CaseRegion::II: return "II";
    case CaseRegion::III: return "III";
    case CaseRegion::IV: return "IV";
    case CaseRegion::V: return "V";
  }
  return "?";
}

double multiplier_M(const FrequencyTriple& t, double s, double b, double delta) {
  require(t.nonresonant(), "multiplier_M: triple must be nonresonant");
  double lam = t.lambda;
  double n1 = t.m1 / lam, n2 = t.m2 / lam, n3 = t.m3 / lam;
  double n = n1 + n2 + n3;
  double n_star = std::max({std::abs(n1), std::abs(n2), std::abs(n3), std::abs(n)});
  double num = std::abs(n) * std::pow(bracket(n), s) * std::pow(bracket(n1), -s) *
               std::pow(bracket(n2), -s) * std::pow(bracket(n3), -s);
  double base = std::abs((n1 + n2) * (n2 + n3) * (n3 + n1)) * n_star * n_star;
  return num / std::pow(base, 1.0 - b - 2.0 * delta);
}

bool in_region(const FrequencyTriple& t, CaseRegion r) {
  SortedTriple st = sort_triple(t);
  if (st.n_star <= 0.0) return false;
  double a1 = std::abs(st.c1), a2 = std::abs(st.c2), a3 = std::abs(st.c3);
  double an = std::abs(st.n);
  double ns = st.n_star;
  switch (r) {
    case CaseRegion::I:
      return comparable(a1, ns) && comparable(a2, ns) && comparable(a3, ns) &&
             comparable(an, ns);
    case CaseRegion::II:
      return comparable(a1, ns) && comparable(a2, ns) && small_vs(a3, ns) &&
             comparable(an, ns);
    case CaseRegion::III:
      return comparable(a1, ns) && comparable(a2, ns) && comparable(a3, ns) &&
             small_vs(an, ns);
    case CaseRegion::IV:
      return comparable(a1, ns) && small_vs(a2, ns) && small_vs(a3, ns) &&
             comparable(an, ns);
    case CaseRegion::V:
      return comparable(a1, ns) && comparable(a2, ns) && small_vs(a3, ns) &&
             small_vs(an, ns);
  }
  return false;
}

double region_bound(const FrequencyTriple& t, CaseRegion r, double s, double b,
                    double delta) {
  require(t.nonresonant(), "region_bound: triple must be nonresonant");
  SortedTriple st = sort_triple(t);
  double lam = t.lambda;
  double e1 = 1.0 - b - 2.0 * delta;
  double P = 0.0;
  switch (r) {
    case CaseRegion::I:
      P = std::min({std::abs(st.c1 + st.c2), std::abs(st.c2 + st.c3),
                    std::abs(st.c3 + st.c1)});
      return std::pow(lam, e1) / std::pow(P, 3.0 - 4.0 * b - 8.0 * delta + 2.0 * s);
    case CaseRegion::II: {
      P = std::abs(st.c3 + st.c2);
      double expo = 5.0 * e1 - 1.0 + (s >= 0.0 ? s : 2.0 * s);
      return 1.0 / std::pow(P, expo);
    }
    case CaseRegion::III: {
      P = std::abs(st.c1 + st.c2);
      double expo = 5.0 * e1 - 1.0 + (s >= 0.0 ? 2.0 * s : 3.0 * s);
      return 1.0 / std::pow(P, expo);
    }
    case CaseRegion::IV: {
      P = std::abs(st.c2 + st.c3);
      double expo = 4.0 * e1 - 1.0 + (s >= 0.0 ? 0.0 : 2.0 * s);
      return 1.0 / (std::pow(P, e1) * std::pow(st.n_star, expo));
    }
    case CaseRegion::V: {
      P = std::abs(st.c1 + st.c2);
      double expo = 4.0 * e1 - 1.0 + (s >= 0.0 ? s : 3.0 * s);
      return 1.0 / (std::pow(P, e1) * std::pow(st.n_star, expo));
    }
  }
  return 0.0;
}

CaseWindow admissible_window(CaseRegion r, double s, double delta) {
  CaseWindow w;
  switch (r) {
    case CaseRegion::I:
      w.delta_max = std::min((4.0 * s + 1.0) / 20.0, 1.0 / 20.0);
      w.b_hi = 5.0 / 8.0 - 2.0 * delta + std::min(s / 2.0, 0.0);
      break;
    case CaseRegion::II:
      w.delta_max = std::min((2.0 * s + 1.0) / 20.0, 1.0 / 20.0);
      w.b_hi = 7.0 / 10.0 - 2.0 * delta + std::min(2.0 * s / 5.0, 0.0);
      break;
    case CaseRegion::III:
      w.delta_max = std::min((3.0 * s + 1.0) / 20.0, 1.0 / 20.0);
      w.b_hi = 7.0 / 10.0 - 2.0 * delta + std::min(3.0 * s / 5.0, 0.0);
      break;
    case CaseRegion::IV:
      w.delta_max = std::min((1.0 + 2.0 * s) / 20.0, 1.0 / 20.0);
      w.b_hi = 7.0 / 10.0 - 2.0 * delta + std::min(2.0 * s / 5.0, 0.0);
      break;
    case CaseRegion::V:
      w.delta_max = std::min((3.0 * s + 1.0) / 20.0, 1.0 / 20.0);
      w.b_hi = 7.0 / 10.0 - 2.0 * delta + std::min(3.0 * s / 5.0, 0.0);
      break;
  }
  return w;
}

CaseBoundReport case_bound_check(CaseRegion r, double s, double b, double delta,
                                 double lambda, long long m_abs_max) {
  require(lambda >= 1.0, "case_bound_check: lambda must be >= 1");
  require(m_abs_max >= 1, "case_bound_check: m_abs_max must be >= 1");
  CaseBoundReport rep;
  rep.region = r;
  rep.s = s;
  rep.b = b;
  rep.delta = delta;
  rep.lambda = lambda;
  rep.m_abs_max = m_abs_max;
  rep.window = admissible_window(r, s, delta);
  rep.window_ok = delta > 0.0 && delta <= rep.window.delta_max + 1e-12 &&
                  b >= rep.window.b_lo && b < rep.window.b_hi;
  rep.sigma_info = 3.0 - 5.0 * b - 10.0 * delta + 2.0 * s;

  const long long B = m_abs_max;
  for (long long m1 = -B; m1 <= B; ++m1)
    for (long long m2 = -B; m2 <= B; ++m2)
      for (long long m3 = -B; m3 <= B; ++m3) {
        long long mt = m1 + m2 + m3;
        if (mt < -B || mt > B) continue;
        FrequencyTriple t{m1, m2, m3, lambda};
        if (!t.nonresonant()) continue;
        long long amax = std::max({std::llabs(m1), std::llabs(m2), std::llabs(m3),
                                   std::llabs(mt)});
        if (static_cast<double>(amax) <= lambda) continue;  // n_* > 1 assumed
        if (!in_region(t, r)) continue;
        double ratio = multiplier_M(t, s, b, delta) / region_bound(t, r, s, b, delta);
        ++rep.count;
        if (ratio > rep.max_ratio) {
          rep.max_ratio = ratio;
          rep.argmax = t;
        }
      }
  rep.empty = rep.count == 0;
  rep.violation = rep.max_ratio > 1.0 + 1e-9;
  return rep;
}

std::string case_bound_report_json(const CaseBoundReport& rep) {
  nlohmann::ordered_json j;
  j["region"] = region_name(rep.region);
  j["s"] = rep.s;
  j["b"] = rep.b;
  j["delta"] = rep.delta;
  j["lambda"] = rep.lambda;
  j["m_abs_max"] = rep.m_abs_max;
  j["count"] = rep.count;
  j["empty"] = rep.empty;
  j["max_ratio"] = rep.max_ratio;
  j["argmax_triple"] = {rep.argmax.m1, rep.argmax.m2, rep.argmax.m3};
  j["violation"] = rep.violation;
  j["window_ok"] = rep.window_ok;
  j["window"] = {{"delta_max", rep.window.delta_max},
                 {"b_lo", rep.window.b_lo},
                 {"b_hi", rep.window.b_hi}};
  j["sigma_info"] = rep.sigma_info;
  j["conventions"] = {{"comparable", "2x >= n_star"},
                      {"small", "4x <= n_star"},
                      {"n_star_excluded_at_or_below", 1.0}};
  return j.dump();
}

}  // namespace kawahara
